"""Ballot profiles, support counting, and concrete vote tabulation.

Candidates are dense integer ids ``0 .. kappa-1``.  A ranking is a tuple of
distinct candidate ids, most preferred first; rankings shorter than the
ballot limit are allowed (a ballot whose listed candidates have all been
eliminated is exhausted and counts for nobody).  A :class:`BallotProfile`
maps rankings to expected counts (Poisson rates); a
:class:`RealizedElection` maps rankings to realized integer counts.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Ranking",
    "BallotProfile",
    "RealizedElection",
    "admissible_rankings",
    "conditional_support",
    "expected_total",
    "tabulate",
    "IRV",
    "SMDP",
]

Ranking = tuple[int, ...]

IRV = "IRV"
SMDP = "SMDP"


def _as_ranking(seq: Iterable[int]) -> Ranking:
    return tuple(int(c) for c in seq)


def _validate_ranking(ranking: Ranking, kappa: int, max_length: int) -> None:
    if not 1 <= len(ranking) <= max_length:
        raise ValueError(
            f"ranking {ranking!r} has length {len(ranking)}, allowed 1..{max_length}"
        )
    if len(set(ranking)) != len(ranking):
        raise ValueError(f"ranking {ranking!r} repeats a candidate")
    for c in ranking:
        if not 0 <= c < kappa:
            raise ValueError(f"candidate {c} out of range for kappa={kappa}")


def admissible_rankings(
    kappa: int, max_length: int | None = None, full_length_only: bool = False
) -> list[Ranking]:
    """All rankings a voter could cast, in lexicographic order.

    Args:
        kappa: Number of candidates.
        max_length: Longest permitted ranking (defaults to ``kappa``).
        full_length_only: If true, only rankings of exactly ``max_length``
            candidates are returned; otherwise every length from 1 up to
            ``max_length`` is admissible.
    """
    if max_length is None:
        max_length = kappa
    if not 1 <= max_length <= kappa:
        raise ValueError(f"max_length must be in 1..{kappa}, got {max_length}")
    from itertools import permutations

    lengths = [max_length] if full_length_only else range(1, max_length + 1)
    out: list[Ranking] = []
    for length in lengths:
        out.extend(permutations(range(kappa), length))
    # Plain tuple order: lexicographic, with a prefix sorting before any
    # extension of it (shorter before longer).
    out.sort()
    return out


class BallotProfile:
    """Expected ballot counts for one election.

    Args:
        kappa: Number of candidates (at least 2).
        rates: Mapping from ranking to a nonnegative expected count.
        max_length: Longest ranking voters may cast; defaults to ``kappa``.
    """

    def __init__(
        self,
        kappa: int,
        rates: Mapping[Sequence[int], float],
        max_length: int | None = None,
    ):
        if kappa < 2:
            raise ValueError(f"kappa must be at least 2, got {kappa}")
        if max_length is None:
            max_length = kappa
        if not 1 <= max_length <= kappa:
            raise ValueError(f"max_length must be in 1..{kappa}, got {max_length}")
        self.kappa = int(kappa)
        self.max_length = int(max_length)
        cleaned: dict[Ranking, float] = {}
        for key, rate in rates.items():
            ranking = _as_ranking(key)
            _validate_ranking(ranking, self.kappa, self.max_length)
            rate = float(rate)
            if not math.isfinite(rate) or rate < 0.0:
                raise ValueError(f"rate for {ranking!r} must be finite and >= 0, got {rate}")
            cleaned[ranking] = cleaned.get(ranking, 0.0) + rate
        self.rates: dict[Ranking, float] = cleaned

    @property
    def total_expected(self) -> float:
        return math.fsum(self.rates.values())

    def candidates(self) -> range:
        return range(self.kappa)

    def relabeled(self, perm: Sequence[int]) -> "BallotProfile":
        """Profile with candidate ids mapped through ``perm``."""
        if sorted(perm) != list(range(self.kappa)):
            raise ValueError("perm must be a permutation of candidate ids")
        rates = {tuple(perm[c] for c in r): v for r, v in self.rates.items()}
        return BallotProfile(self.kappa, rates, self.max_length)

    def to_dict(self) -> dict:
        entries = [
            {"ranking": list(r), "rate": v} for r, v in sorted(self.rates.items())
        ]
        return {"kappa": self.kappa, "L": self.max_length, "rates": entries}

    @classmethod
    def from_dict(cls, data: Mapping) -> "BallotProfile":
        rates = {tuple(e["ranking"]): e["rate"] for e in data["rates"]}
        return cls(data["kappa"], rates, data.get("L"))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "BallotProfile":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BallotProfile)
            and self.kappa == other.kappa
            and self.max_length == other.max_length
            and self.rates == other.rates
        )

    def __repr__(self) -> str:
        return (
            f"BallotProfile(kappa={self.kappa}, L={self.max_length}, "
            f"n_rankings={len(self.rates)}, total={self.total_expected:g})"
        )


class RealizedElection:
    """One concrete electorate: integer ballot counts per ranking."""

    def __init__(
        self,
        kappa: int,
        counts: Mapping[Sequence[int], int],
        max_length: int | None = None,
    ):
        if kappa < 2:
            raise ValueError(f"kappa must be at least 2, got {kappa}")
        if max_length is None:
            max_length = kappa
        self.kappa = int(kappa)
        self.max_length = int(max_length)
        cleaned: dict[Ranking, int] = {}
        for key, count in counts.items():
            ranking = _as_ranking(key)
            _validate_ranking(ranking, self.kappa, self.max_length)
            count = int(count)
            if count < 0:
                raise ValueError(f"count for {ranking!r} must be >= 0, got {count}")
            cleaned[ranking] = cleaned.get(ranking, 0) + count
        self.counts: dict[Ranking, int] = cleaned

    @property
    def total_ballots(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        entries = [
            {"ranking": list(r), "count": v} for r, v in sorted(self.counts.items())
        ]
        return {"kappa": self.kappa, "L": self.max_length, "counts": entries}

    @classmethod
    def from_dict(cls, data: Mapping) -> "RealizedElection":
        counts = {tuple(e["ranking"]): e["count"] for e in data["counts"]}
        return cls(data["kappa"], counts, data.get("L"))

    def __repr__(self) -> str:
        return (
            f"RealizedElection(kappa={self.kappa}, L={self.max_length}, "
            f"ballots={self.total_ballots})"
        )


def _support_items(
    weights: Mapping[Ranking, float],
    candidate: int,
    dropped: frozenset[int],
    position_cap: int | None,
) -> Iterator[float]:
    """Weights of ballots whose top non-dropped choice is ``candidate``.

    A ballot counts at most once: walk its ranking, skip dropped candidates,
    and look at the first survivor.  With ``position_cap`` set, the survivor
    must additionally sit at ballot position <= position_cap (1-based).
    """
    for ranking, weight in weights.items():
        for pos, cand in enumerate(ranking, start=1):
            if cand in dropped:
                continue
            if cand == candidate and (position_cap is None or pos <= position_cap):
                yield weight
            break


def conditional_support(
    profile: BallotProfile,
    candidate: int,
    position_cap: int,
    dropped: Sequence[int],
) -> float:
    """Expected ballots ranking ``candidate`` at or above ``position_cap``
    with every higher position filled by an already-dropped candidate.

    Args:
        profile: Expected ballot counts.
        candidate: Candidate receiving the support.
        position_cap: Highest (1-based) ballot position that may hold the
            candidate; must be within the profile's ranking-length limit.
        dropped: Candidates treated as eliminated.

    Returns:
        Sum of rates of qualifying rankings, each counted once.
    """
    if not 0 <= candidate < profile.kappa:
        raise ValueError(f"candidate {candidate} out of range")
    if not 1 <= position_cap <= profile.max_length:
        raise ValueError(
            f"position_cap must be in 1..{profile.max_length}, got {position_cap}"
        )
    dropped_set = frozenset(int(c) for c in dropped)
    if candidate in dropped_set:
        raise ValueError(f"candidate {candidate} is in the dropped sequence")
    for c in dropped_set:
        if not 0 <= c < profile.kappa:
            raise ValueError(f"dropped candidate {c} out of range")
    return math.fsum(_support_items(profile.rates, candidate, dropped_set, position_cap))


def expected_total(
    profile: BallotProfile, candidate: int, dropped: Sequence[int]
) -> float:
    """Expected vote total of ``candidate`` after ``dropped`` are eliminated.

    A ballot counts for its highest-ranked candidate not yet eliminated;
    ballots listing only eliminated candidates are exhausted.
    """
    if not 0 <= candidate < profile.kappa:
        raise ValueError(f"candidate {candidate} out of range")
    dropped_set = frozenset(int(c) for c in dropped)
    if candidate in dropped_set:
        raise ValueError(f"candidate {candidate} is in the dropped sequence")
    for c in dropped_set:
        if not 0 <= c < profile.kappa:
            raise ValueError(f"dropped candidate {c} out of range")
    return math.fsum(_support_items(profile.rates, candidate, dropped_set, None))


def _realized_totals(
    counts: Mapping[Ranking, int], active: set[int]
) -> dict[int, int]:
    totals = {c: 0 for c in active}
    for ranking, count in counts.items():
        for cand in ranking:
            if cand in active:
                totals[cand] += count
                break
    return totals


def tabulate(
    realized: RealizedElection,
    rule: str = IRV,
    tie_break: Sequence[int] | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Run an election on realized counts and return (winner, drop order).

    Args:
        realized: Integer ballot counts.
        rule: ``"IRV"`` (iterated eliminations) or ``"SMDP"`` (single round
            of first choices).
        tie_break: Priority order over candidates, strongest first.  In a
            tie for the minimum the lowest-priority candidate drops; in a
            tie for the maximum the highest-priority candidate wins.
            Defaults to ascending candidate id.

    Returns:
        The winning candidate and the elimination order (empty for SMDP).
    """
    if realized.total_ballots == 0:
        raise ValueError("cannot tabulate an election with no ballots")
    kappa = realized.kappa
    if tie_break is None:
        tie_break = range(kappa)
    priority = {c: rank for rank, c in enumerate(tie_break)}
    if sorted(priority) != list(range(kappa)):
        raise ValueError("tie_break must order every candidate exactly once")

    if rule == SMDP:
        totals = _realized_totals(realized.counts, set(range(kappa)))
        # Highest total wins; priority rank ascends from strongest, so the
        # smallest rank wins ties.
        winner = min(range(kappa), key=lambda c: (-totals[c], priority[c]))
        return winner, ()
    if rule != IRV:
        raise ValueError(f"unknown rule {rule!r}")

    active = set(range(kappa))
    drops: list[int] = []
    while len(active) > 1:
        totals = _realized_totals(realized.counts, active)
        loser = max(active, key=lambda c: (-totals[c], priority[c]))
        active.remove(loser)
        drops.append(loser)
    return active.pop(), tuple(drops)
