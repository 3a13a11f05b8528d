"""Assumption-free Monte-Carlo estimates of pivotal probabilities.

Each draw realizes an integer electorate from the profile's Poisson rates,
tabulates the IRV winner, adds the single ballot under study, and
re-tabulates.  Ties are broken by a fair coin realized as one random
tie-strength number per candidate per draw; the recount reuses the same
numbers, so the added ballot is the only difference between the two counts.
A draw whose winner changes is pivotal; it counts as direct when the new
winner is the ballot's own surviving candidate, indirect otherwise.

Draws are generated in fixed-size blocks with a counter-based seed per
block, so estimates are bit-for-bit reproducible and independent of how
blocks would be scheduled across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .elections import BallotProfile, Ranking

__all__ = [
    "OracleConfig",
    "OracleEstimate",
    "mc_pivot_estimate",
    "mc_pivot_estimates",
    "mc_expected_utility",
]

_BLOCK = 1 << 16
_COUNT_STREAM = 0x636E7473
_COIN_STREAM = 0x636F696E


@dataclass(frozen=True)
class OracleConfig:
    """Monte-Carlo sampling parameters.

    ``seed`` drives the Poisson counts and ``tie_coin_seed`` the tie-break
    coins; the latter defaults to the former.  Both are folded into
    per-block substreams, so the same config always replays the same draws.
    """

    draws: int
    seed: int = 0
    tie_coin_seed: int | None = None

    def __post_init__(self):
        if self.draws < 1:
            raise ValueError(f"draws must be >= 1, got {self.draws}")

    @property
    def coin_seed(self) -> int:
        return self.seed if self.tie_coin_seed is None else self.tie_coin_seed


@dataclass(frozen=True)
class OracleEstimate:
    """Estimated pivotal frequencies for one ballot."""

    p_direct_hat: float
    p_indirect_hat: float
    p_total_hat: float
    stderr_total: float
    draws_used: int


def _block_rngs(cfg: OracleConfig, block: int) -> tuple[np.random.Generator, np.random.Generator]:
    counts = np.random.default_rng(
        np.random.SeedSequence([_COUNT_STREAM, cfg.seed % 2**64, block])
    )
    coins = np.random.default_rng(
        np.random.SeedSequence([_COIN_STREAM, cfg.coin_seed % 2**64, block])
    )
    return counts, coins


def _tabulate_block(
    counts: np.ndarray,
    rankings: list[Ranking],
    kappa: int,
    tie_strength: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized IRV count of many electorates at once.

    Args:
        counts: (n, R) ballot counts per ranking.
        rankings: The R rankings, column order of ``counts``.
        kappa: Number of candidates.
        tie_strength: (n, kappa) floats in [0, 1); on equal totals the
            candidate with smaller strength drops (and loses the final).

    Returns:
        (winner, drops, close): winner per draw, (n, kappa-1) elimination
        order, and a flag marking draws where some round was decided by a
        margin of at most one vote (only those can react to one more
        ballot).
    """
    n = counts.shape[0]
    active = np.ones((n, kappa), dtype=bool)
    drops = np.empty((n, kappa - 1), dtype=np.int64)
    close = np.zeros(n, dtype=bool)
    rows = np.arange(n)
    for rnd in range(kappa - 1):
        totals = np.zeros((n, kappa), dtype=np.int64)
        for j, ranking in enumerate(rankings):
            sel = np.full(n, -1, dtype=np.int64)
            for cand in reversed(ranking):
                sel = np.where(active[:, cand], cand, sel)
            for cand in ranking:
                mask = sel == cand
                if mask.any():
                    totals[mask, cand] += counts[mask, j]
        masked = np.where(active, totals.astype(np.float64), np.inf)
        two_smallest = np.partition(masked, 1, axis=1)[:, :2]
        close |= (two_smallest[:, 1] - two_smallest[:, 0]) <= 1.0
        loser = np.argmin(masked + tie_strength, axis=1)
        active[rows, loser] = False
        drops[:, rnd] = loser
    winner = np.argmax(active, axis=1)
    return winner, drops, close


def _prepare(profile: BallotProfile) -> tuple[list[Ranking], np.ndarray]:
    rankings = sorted(profile.rates)
    rates = np.array([profile.rates[r] for r in rankings], dtype=np.float64)
    return rankings, rates


def _with_ballot(
    rankings: list[Ranking], counts: np.ndarray, ballot: Ranking
) -> tuple[list[Ranking], np.ndarray]:
    if ballot in rankings:
        j = rankings.index(ballot)
        counts = counts.copy()
        counts[:, j] += 1
        return rankings, counts
    extra = np.ones((counts.shape[0], 1), dtype=counts.dtype)
    return rankings + [ballot], np.hstack([counts, extra])


def _classify(
    ballot: Ranking, drops_with: np.ndarray, winners_with: np.ndarray, kappa: int
) -> np.ndarray:
    """True where the pivot is direct: the ballot's first candidate still
    standing at the final round is the new winner."""
    out = np.zeros(len(winners_with), dtype=bool)
    for i in range(len(winners_with)):
        early = set(drops_with[i, : kappa - 2].tolist())
        for cand in ballot:
            if cand not in early:
                out[i] = cand == winners_with[i]
                break
    return out


def mc_pivot_estimates(
    profile: BallotProfile,
    ballots: Sequence[Sequence[int]],
    cfg: OracleConfig,
) -> list[OracleEstimate]:
    """Pivotal-frequency estimates for several ballots over shared draws.

    All ballots are evaluated against the same realized electorates, so the
    result for each ballot is identical to running
    :func:`mc_pivot_estimate` on it alone.
    """
    kappa = profile.kappa
    ballots = [tuple(int(c) for c in b) for b in ballots]
    rankings, rates = _prepare(profile)
    n_direct = [0] * len(ballots)
    n_indirect = [0] * len(ballots)
    done = 0
    block = 0
    while done < cfg.draws:
        n = min(_BLOCK, cfg.draws - done)
        rng_counts, rng_coins = _block_rngs(cfg, block)
        counts = rng_counts.poisson(rates, size=(n, len(rates)))
        tie_strength = rng_coins.random((n, kappa))
        w0, _, near = _tabulate_block(counts, rankings, kappa, tie_strength)
        if near.any():
            idx = np.flatnonzero(near)
            sub_counts = counts[idx]
            sub_strength = tie_strength[idx]
            sub_w0 = w0[idx]
            for b, ballot in enumerate(ballots):
                rk1, ct1 = _with_ballot(rankings, sub_counts, ballot)
                w1, drops1, _ = _tabulate_block(ct1, rk1, kappa, sub_strength)
                flipped = w1 != sub_w0
                if flipped.any():
                    direct = _classify(ballot, drops1[flipped], w1[flipped], kappa)
                    n_direct[b] += int(direct.sum())
                    n_indirect[b] += int((~direct).sum())
        done += n
        block += 1

    out = []
    for b in range(len(ballots)):
        p_d = n_direct[b] / cfg.draws
        p_i = n_indirect[b] / cfg.draws
        p_t = p_d + p_i
        stderr = math.sqrt(p_t * (1.0 - p_t) / cfg.draws)
        out.append(OracleEstimate(p_d, p_i, p_d + p_i, stderr, cfg.draws))
    return out


def mc_pivot_estimate(
    profile: BallotProfile, ballot: Sequence[int], cfg: OracleConfig
) -> OracleEstimate:
    """Pivotal-frequency estimate for a single ballot."""
    return mc_pivot_estimates(profile, [ballot], cfg)[0]


def mc_expected_utility(
    profile: BallotProfile,
    ballot: Sequence[int],
    utilities: Sequence[float] | Mapping[int, float],
    cfg: OracleConfig,
) -> float:
    """Average winner-utility change from adding the ballot, per draw."""
    kappa = profile.kappa
    if isinstance(utilities, Mapping):
        u = np.array([float(utilities[c]) for c in range(kappa)])
    else:
        u = np.asarray(utilities, dtype=np.float64)
        if u.shape != (kappa,):
            raise ValueError(f"need one utility per candidate ({kappa})")
    ballot = tuple(int(c) for c in ballot)
    rankings, rates = _prepare(profile)
    gain = 0.0
    done = 0
    block = 0
    while done < cfg.draws:
        n = min(_BLOCK, cfg.draws - done)
        rng_counts, rng_coins = _block_rngs(cfg, block)
        counts = rng_counts.poisson(rates, size=(n, len(rates)))
        tie_strength = rng_coins.random((n, kappa))
        w0, _, near = _tabulate_block(counts, rankings, kappa, tie_strength)
        if near.any():
            idx = np.flatnonzero(near)
            rk1, ct1 = _with_ballot(rankings, counts[idx], ballot)
            w1, _, _ = _tabulate_block(ct1, rk1, kappa, tie_strength[idx])
            gain += float(np.sum(u[w1] - u[w0[idx]]))
        done += n
        block += 1
    return gain / cfg.draws
