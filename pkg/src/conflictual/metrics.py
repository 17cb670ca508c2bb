"""Conflict scores and polarization metrics of candidate pairs.

Every quantity is derived from four multiplicity-weighted integers per pair
``{a, b}``: the group sizes ``|V^{a>b}|``, ``|V^{b>a}|`` and the group distance
totals ``S_ab = sum of v(ab) over V^{a>b}`` and ``S_ba`` likewise. Scores are
Python ints and metrics are :class:`fractions.Fraction`, so identities between
them hold exactly.

A pairwise conflict summed over the electorate counts each unordered pair of
voters once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .core import Ballot, DomainError, Pair, Profile, all_pairs, rank_distance

Mode = Literal["sum", "nash"]


@dataclass(frozen=True)
class GroupSums:
    """Group sizes and distance totals of an (oriented) pair."""

    n_ab: int
    n_ba: int
    s_ab: int
    s_ba: int
    n: int
    m: int

    @property
    def conflicting(self) -> bool:
        return self.n_ab > 0 and self.n_ba > 0


def group_sums(profile: Profile, pair: tuple[int, int]) -> GroupSums:
    a, b = pair
    if a == b:
        raise DomainError("a pair needs two distinct candidates")
    if not (0 <= a < profile.m and 0 <= b < profile.m):
        raise DomainError(f"pair {pair} is outside the roster of size {profile.m}")
    count, total = profile.pair_sums
    return GroupSums(
        int(count[a, b]), int(count[b, a]), int(total[a, b]), int(total[b, a]), profile.n, profile.m
    )


def pairwise_conflict(v: Ballot, w: Ballot, pair: tuple[int, int], mode: Mode = "sum") -> int:
    """Conflict that ``pair`` induces between two ballots."""
    a, b = pair
    d1 = rank_distance(v, a, b)
    d2 = rank_distance(w, a, b)
    if d1 * d2 > 0:
        return 0
    if mode == "sum":
        return abs(d1) + abs(d2)
    if mode == "nash":
        return abs(d1) * abs(d2)
    raise DomainError(f"unknown conflict mode {mode!r}")


def conflict_score(profile: Profile, pair: tuple[int, int], mode: Mode = "sum") -> int:
    g = group_sums(profile, pair)
    if mode == "sum":
        return g.n_ba * g.s_ab + g.n_ab * g.s_ba
    if mode == "nash":
        return g.s_ab * g.s_ba
    raise DomainError(f"unknown conflict mode {mode!r}")


def swap_score(profile: Profile, pair: tuple[int, int]) -> int:
    """Minimum number of adjacent swaps that make the pair non-conflicting."""
    g = group_sums(profile, pair)
    return min(g.s_ab, g.s_ba)


def alpha(profile: Profile, pair: tuple[int, int]) -> Fraction:
    """Partitioning ratio: ``2/n * min(|V^{a>b}|, |V^{b>a}|)``."""
    g = group_sums(profile, pair)
    return Fraction(2 * min(g.n_ab, g.n_ba), g.n)


def beta(profile: Profile, pair: tuple[int, int]) -> Fraction:
    """Discrepancy: mean absolute rank distance normalized by ``m - 1``."""
    g = group_sums(profile, pair)
    return Fraction(g.s_ab + g.s_ba, g.n * (g.m - 1))


def group_mu(profile: Profile, pair: tuple[int, int]) -> tuple[Fraction | None, Fraction | None]:
    """Average distance within each preference group; ``None`` for an empty group."""
    g = group_sums(profile, pair)
    mu_ab = Fraction(g.s_ab, g.n_ab) if g.n_ab else None
    mu_ba = Fraction(g.s_ba, g.n_ba) if g.n_ba else None
    return mu_ab, mu_ba


def gamma(profile: Profile, pair: tuple[int, int]) -> Fraction:
    """Discrepancy balance; 0 when one of the groups is empty."""
    mu_ab, mu_ba = group_mu(profile, pair)
    if mu_ab is None or mu_ba is None:
        return Fraction(0)
    return min(mu_ab / mu_ba, mu_ba / mu_ab)


def phi(profile: Profile, pair: tuple[int, int]) -> Fraction:
    """Group discrepancy imbalance ``|sum v(ab)| / sum |v(ab)|``."""
    g = group_sums(profile, pair)
    return Fraction(abs(g.s_ab - g.s_ba), g.s_ab + g.s_ba)


@dataclass(frozen=True)
class PairAssessment:
    pair: Pair
    conf_sum: int
    conf_nash: int
    swap_score: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    phi: Fraction
    mu_ab: Fraction | None
    mu_ba: Fraction | None

    @property
    def conflicting(self) -> bool:
        return self.alpha > 0


def _assess(pair: Pair, g: GroupSums) -> PairAssessment:
    mu_ab = Fraction(g.s_ab, g.n_ab) if g.n_ab else None
    mu_ba = Fraction(g.s_ba, g.n_ba) if g.n_ba else None
    if mu_ab is None or mu_ba is None:
        gam = Fraction(0)
    else:
        gam = min(mu_ab / mu_ba, mu_ba / mu_ab)
    return PairAssessment(
        pair=pair,
        conf_sum=g.n_ba * g.s_ab + g.n_ab * g.s_ba,
        conf_nash=g.s_ab * g.s_ba,
        swap_score=min(g.s_ab, g.s_ba),
        alpha=Fraction(2 * min(g.n_ab, g.n_ba), g.n),
        beta=Fraction(g.s_ab + g.s_ba, g.n * (g.m - 1)),
        gamma=gam,
        phi=Fraction(abs(g.s_ab - g.s_ba), g.s_ab + g.s_ba),
        mu_ab=mu_ab,
        mu_ba=mu_ba,
    )


def assess_pair(profile: Profile, pair: tuple[int, int]) -> PairAssessment:
    return _assess(Pair.of(*pair), group_sums(profile, Pair.of(*pair)))


def assess_all(profile: Profile) -> list[PairAssessment]:
    """Assessment of every unordered pair, in lexicographic pair order."""
    return [assess_pair(profile, p) for p in all_pairs(profile.m)]


def max_alpha(profile: Profile) -> Fraction:
    return max(alpha(profile, p) for p in all_pairs(profile.m))


def max_beta(profile: Profile) -> Fraction:
    return max(beta(profile, p) for p in all_pairs(profile.m))


def total_abs_distance(profile: Profile) -> int:
    """Sum of ``|v(ab)|`` over all voters and unordered pairs."""
    _, total = profile.pair_sums
    return int(total.sum())
