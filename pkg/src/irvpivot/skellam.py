"""Poisson-difference (Skellam) probability kernel.

Every comparison of two candidates' vote totals in this package reduces to
probabilities of the difference of two independent Poisson counts.  The pmf
is computed by direct convolution of the two Poisson pmfs in the log domain,
truncated once the neglected tail mass is below a configurable bound.  This
is slower than a Bessel-function shortcut but has no special-function edge
cases and is exact up to the truncation bound, including degenerate rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "skellam_pmf",
    "prob_strictly_greater",
    "tie_terms",
]


@dataclass(frozen=True)
class Tolerance:
    """Truncation bound for the kernel's infinite sums.

    ``tail_eps`` is the maximum probability mass that may be discarded when
    an infinite sum is cut off.  Must lie strictly between 0 and 1.
    """

    tail_eps: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.tail_eps < 1.0):
            raise ValueError(f"tail_eps must be in (0, 1), got {self.tail_eps}")

    # Number of standard deviations of Poisson spread to keep on each side
    # of a sum's peak.  12 sigma + 40 terms leaves tail mass far below any
    # tail_eps down to ~1e-30, so the window never has to adapt to eps.
    @property
    def _sigmas(self) -> float:
        return 12.0

    @property
    def _pad(self) -> int:
        return 40


DEFAULT_TOLERANCE = Tolerance()


def _check_rate(lam: float, name: str) -> float:
    lam = float(lam)
    if not np.isfinite(lam) or lam < 0.0:
        raise ValueError(f"{name} must be a finite nonnegative rate, got {lam}")
    return lam


def _pois_logpmf(ms: np.ndarray, lam: float) -> np.ndarray:
    """Poisson log pmf on an integer grid; lam == 0 handled exactly."""
    if lam == 0.0:
        return np.where(ms == 0, 0.0, -np.inf)
    with np.errstate(divide="ignore"):
        return ms * np.log(lam) - lam - gammaln(ms + 1.0)


def _pmf_window(w: float, lam1: float, lam2: float, tol: Tolerance) -> tuple[int, int]:
    """Index range of Y-values carrying the mass of the convolution at w."""
    # Peak of the summand over m: (m + w) * m ~= lam1 * lam2.
    mstar = 0.5 * (-w + np.sqrt(w * w + 4.0 * lam1 * lam2))
    half = tol._sigmas * np.sqrt(lam1 + lam2 + abs(w)) + tol._pad
    lo = max(0, int(-w), int(np.floor(mstar - half)))
    hi = max(lo, int(np.ceil(mstar + half)))
    return lo, hi


def _skellam_pmf_many(ws: np.ndarray, lam1: float, lam2: float, tol: Tolerance) -> np.ndarray:
    """Skellam pmf at every integer in ``ws`` (vectorized convolution)."""
    ws = np.asarray(ws, dtype=np.int64)
    if lam1 == 0.0 and lam2 == 0.0:
        return (ws == 0).astype(float)
    if lam2 == 0.0:
        out = np.exp(_pois_logpmf(ws.astype(float), lam1))
        return np.where(ws >= 0, out, 0.0)
    if lam1 == 0.0:
        out = np.exp(_pois_logpmf(-ws.astype(float), lam2))
        return np.where(ws <= 0, out, 0.0)

    lo, hi = _pmf_window(float(ws.min()), lam1, lam2, tol)
    lo2, hi2 = _pmf_window(float(ws.max()), lam1, lam2, tol)
    ms = np.arange(min(lo, lo2), max(hi, hi2) + 1, dtype=float)
    logy = _pois_logpmf(ms, lam2)
    # logs[i, j] = log P(X = w_i + m_j) + log P(Y = m_j)
    logs = _pois_logpmf(ws[:, None] + ms[None, :], lam1) + logy[None, :]
    mx = np.max(logs, axis=1, keepdims=True)
    mx = np.where(np.isfinite(mx), mx, 0.0)
    vals = np.exp(mx[:, 0]) * np.sum(np.exp(logs - mx), axis=1)
    return np.clip(vals, 0.0, 1.0)


def skellam_pmf(w: int, lam1: float, lam2: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """P(X - Y = w) for independent X ~ Poisson(lam1), Y ~ Poisson(lam2).

    Args:
        w: Integer difference at which to evaluate the pmf.
        lam1: Rate of the first count.
        lam2: Rate of the second count.
        tol: Truncation bound for the convolution sum.

    Returns:
        Probability in [0, 1], with absolute truncation error below
        ``tol.tail_eps``.  Zero rates are handled exactly.
    """
    lam1 = _check_rate(lam1, "lam1")
    lam2 = _check_rate(lam2, "lam2")
    return float(_skellam_pmf_many(np.array([int(w)]), lam1, lam2, tol)[0])


def prob_strictly_greater(
    lam_a: float, lam_b: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> float:
    """P(X > Y) for independent X ~ Poisson(lam_a), Y ~ Poisson(lam_b).

    Equal to the upper Skellam tail sum over differences w >= 1.  The sum is
    rearranged over the value of Y, so each term is a Poisson pmf times a
    Poisson survival probability; this keeps the cost linear in the spread
    of Y even for rates up to 1e6.

    Returns:
        Probability clamped to [0, 1].
    """
    lam_a = _check_rate(lam_a, "lam_a")
    lam_b = _check_rate(lam_b, "lam_b")
    if lam_a == 0.0:
        return 0.0
    if lam_b == 0.0:
        # Y is 0 almost surely: P(X >= 1).
        return float(-np.expm1(-lam_a))
    half = tol._sigmas * np.sqrt(lam_b) + tol._pad
    lo = max(0, int(np.floor(lam_b - half)))
    hi = int(np.ceil(lam_b + half))
    ms = np.arange(lo, hi + 1, dtype=float)
    weights = np.exp(_pois_logpmf(ms, lam_b))
    # gammainc(m + 1, lam) is P(Poisson(lam) >= m + 1).
    upper = gammainc(ms + 1.0, lam_a)
    return float(min(1.0, max(0.0, np.sum(weights * upper))))


def tie_terms(
    lam_c: float, lam_opp: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[float, float]:
    """Exact-tie and one-behind probabilities for a pair of vote totals.

    ``break_tie`` is the probability the two totals are exactly equal, so
    one extra vote for the first candidate breaks the tie.  ``make_tie`` is
    the probability the first candidate trails by exactly one vote, so one
    extra vote creates a tie.  Callers weight each by the fair-coin factor
    of one half.

    Returns:
        Tuple ``(break_tie, make_tie)``.
    """
    lam_c = _check_rate(lam_c, "lam_c")
    lam_opp = _check_rate(lam_opp, "lam_opp")
    vals = _skellam_pmf_many(np.array([0, -1]), lam_c, lam_opp, tol)
    return float(vals[0]), float(vals[1])
