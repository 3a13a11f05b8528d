"""Pivotal probabilities under single-member district plurality.

Only first choices matter: each candidate's expected vote count is the
total rate of rankings listing them first.  A single added vote for a
candidate is pivotal when it breaks, or creates and then wins, a two-way
tie at the top.  The default computation conditions on the level of that
tie: it sums over the shared count, weighting by the probability that
every other candidate falls strictly below it.  A cruder variant treats
each head-to-head tie as if the remaining candidates did not exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from .elections import BallotProfile
from .skellam import DEFAULT_TOLERANCE, Tolerance, prob_strictly_greater, tie_terms
from .skellam import _pois_logpmf

__all__ = ["SmdpReport", "first_choice_rates", "smdp_pivot_prob", "smdp_reports"]


@dataclass(frozen=True)
class SmdpReport:
    """Plurality pivotality of a single-choice ballot."""

    candidate: int
    p_pivotal: float

    def to_dict(self) -> dict:
        return {
            "ballot": [self.candidate],
            "p_direct": self.p_pivotal,
            "p_indirect": 0.0,
            "p_total": self.p_pivotal,
            "expected_utility": None,
        }


def first_choice_rates(profile: BallotProfile) -> list[float]:
    """Expected first-place count per candidate."""
    rates = [[] for _ in range(profile.kappa)]
    for ranking, rate in profile.rates.items():
        rates[ranking[0]].append(rate)
    return [math.fsum(r) for r in rates]


def smdp_pivot_prob(
    profile: BallotProfile,
    candidate: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
    pairwise_approx: bool = False,
) -> float:
    """Probability one added first-place vote for ``candidate`` changes
    the plurality winner.

    Args:
        profile: Expected ballot counts (only first choices are used).
        candidate: Candidate receiving the vote.
        tol: Kernel truncation bound.
        pairwise_approx: Score each two-way tie with the head-to-head tie
            mass alone, ignoring where the other candidates sit, instead of
            the exact top-two conditioning.

    Returns:
        Probability in [0, 1].
    """
    if not 0 <= candidate < profile.kappa:
        raise ValueError(f"candidate {candidate} out of range")
    lams = first_choice_rates(profile)
    lam_c = lams[candidate]
    others = [j for j in range(profile.kappa) if j != candidate]

    if len(others) == 1 or pairwise_approx:
        total = 0.0
        for j in others:
            if pairwise_approx and len(others) > 1:
                # Everyone else must sit below the tie; proxy the unknown
                # tie level by a Poisson count at the pair's mean rate.
                level = 0.5 * (lam_c + lams[j])
                below = 1.0
                for k in others:
                    if k != j:
                        below *= prob_strictly_greater(level, lams[k], tol)
            else:
                below = 1.0
            brk, mk = tie_terms(lam_c, lams[j], tol)
            total += 0.5 * (brk + mk) * below
        return min(1.0, max(0.0, total))

    # Exact tie-level conditioning: sum over the tied count m of
    #   P(X_j = m) * [1/2 P(X_c = m) + 1/2 P(X_c = m - 1)] * prod_k P(X_k < m)
    total = 0.0
    for j in others:
        lam_j = lams[j]
        span = tol._sigmas * math.sqrt(max(lam_c, lam_j) + 1.0) + tol._pad
        lo = max(0, int(math.floor(min(lam_c, lam_j) - span)))
        hi = int(math.ceil(max(lam_c, lam_j) + span))
        ms = np.arange(lo, hi + 1, dtype=float)
        p_j = np.exp(_pois_logpmf(ms, lam_j))
        p_c_eq = np.exp(_pois_logpmf(ms, lam_c))
        p_c_behind = np.exp(_pois_logpmf(ms - 1.0, lam_c))
        below = np.ones_like(ms)
        for k in others:
            if k == j:
                continue
            below *= _poisson_cdf_below(ms, lams[k])
        total += float(np.sum(p_j * 0.5 * (p_c_eq + p_c_behind) * below))
    return min(1.0, max(0.0, total))


def _poisson_cdf_below(ms: np.ndarray, lam: float) -> np.ndarray:
    """P(Poisson(lam) < m) for each m in the grid."""
    if lam == 0.0:
        return (ms >= 1).astype(float)
    # gammaincc(m, lam) = P(Poisson(lam) <= m - 1) for integer m >= 1.
    out = np.where(ms >= 1, gammaincc(np.maximum(ms, 1.0), lam), 0.0)
    return out


def smdp_reports(
    profile: BallotProfile,
    tol: Tolerance = DEFAULT_TOLERANCE,
    pairwise_approx: bool = False,
) -> list[SmdpReport]:
    """Pivotality of every single-choice ballot."""
    return [
        SmdpReport(c, smdp_pivot_prob(profile, c, tol, pairwise_approx))
        for c in range(profile.kappa)
    ]
