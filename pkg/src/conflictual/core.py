"""Preference profiles and the elementary operations on rankings.

Candidates are dense integer indices ``0 .. m-1``. A ballot is a tuple listing
the candidates from most to least preferred. A :class:`Profile` stores each
distinct ballot once together with a positive integer multiplicity.

Positions are 1-based: the first-listed candidate of a ballot has position 1.
The signed distance ``rank_distance(ballot, a, b)`` is ``position(b) -
position(a)``, so it is positive exactly when ``a`` is preferred to ``b``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

Ballot = tuple[int, ...]


class ConflictualError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ConflictualError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(ConflictualError, ValueError):
    """Invalid configuration of a rule, generator or ingestion policy."""


class Pair(NamedTuple):
    """Unordered pair of candidates, stored with ``a < b``."""

    a: int
    b: int

    @classmethod
    def of(cls, x: int, y: int) -> Pair:
        if x == y:
            raise DomainError(f"a pair needs two distinct candidates, got {x} twice")
        return cls(x, y) if x < y else cls(y, x)

    def label(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            return f"{{{self.a},{self.b}}}"
        return f"{{{names[self.a]},{names[self.b]}}}"


def all_pairs(m: int) -> list[Pair]:
    return [Pair(a, b) for a in range(m) for b in range(a + 1, m)]


def _check_ballot(ballot: Sequence[int], m: int) -> Ballot:
    ballot = tuple(int(c) for c in ballot)
    if len(ballot) != m or sorted(ballot) != list(range(m)):
        raise DomainError(f"ballot {ballot} is not a permutation of 0..{m - 1}")
    return ballot


@dataclass(frozen=True)
class Profile:
    """A roster of ``m`` candidates and a multiset of strict rankings.

    Parameters
    ----------
    ballots : sequence of ballots
        Each ballot lists all candidates, most preferred first.
    weights : sequence of int, optional
        Multiplicity of each ballot (default 1 each). Must be positive.
    names : sequence of str, optional
        Display names; defaults to ``c0, c1, ...``.
    """

    ballots: tuple[Ballot, ...]
    weights: tuple[int, ...] = ()
    names: tuple[str, ...] = ()
    m: int = field(init=False)

    def __post_init__(self) -> None:
        ballots = tuple(tuple(b) for b in self.ballots)
        if not ballots:
            raise DomainError("a profile needs at least one ballot")
        m = len(self.names) if self.names else len(ballots[0])
        if m < 1:
            raise DomainError("a profile needs at least one candidate")
        ballots = tuple(_check_ballot(b, m) for b in ballots)
        weights = tuple(int(w) for w in self.weights) if self.weights else (1,) * len(ballots)
        if len(weights) != len(ballots):
            raise DomainError("weights and ballots differ in length")
        if any(w <= 0 for w in weights):
            raise DomainError("multiplicities must be positive")
        names = tuple(self.names) if self.names else tuple(f"c{i}" for i in range(m))
        if len(set(names)) != m:
            raise DomainError("candidate names must be unique")
        object.__setattr__(self, "ballots", ballots)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "m", m)

    @classmethod
    def from_orders(
        cls,
        orders: Iterable[Sequence[str] | str],
        weights: Sequence[int] | None = None,
        names: Sequence[str] | None = None,
    ) -> Profile:
        """Build a profile from rankings given by candidate names.

        ``orders`` may hold strings such as ``"a>b>c"`` or sequences of names.
        Without ``names`` the roster is sorted alphabetically.
        """
        parsed = []
        for order in orders:
            if isinstance(order, str):
                order = [tok.strip() for tok in order.replace("≻", ">").split(">")]
            parsed.append(list(order))
        if names is None:
            names = sorted(parsed[0])
        index = {name: i for i, name in enumerate(names)}
        try:
            ballots = [tuple(index[c] for c in order) for order in parsed]
        except KeyError as exc:
            raise DomainError(f"unknown candidate {exc.args[0]!r}") from None
        return cls(tuple(ballots), tuple(weights or ()), tuple(names))

    @classmethod
    def from_counter(cls, counts: Counter | dict, names: Sequence[str] = ()) -> Profile:
        items = list(counts.items())
        return cls(tuple(b for b, _ in items), tuple(w for _, w in items), tuple(names))

    @property
    def n(self) -> int:
        """Total voter weight."""
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.ballots)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"unknown candidate {name!r}") from None

    def pair(self, x: str, y: str) -> Pair:
        """Pair from two candidate names."""
        return Pair.of(self.index(x), self.index(y))

    def expanded(self) -> list[Ballot]:
        """One ballot per voter, multiplicities unrolled."""
        return [b for b, w in zip(self.ballots, self.weights) for _ in range(w)]

    def compressed(self) -> Profile:
        """Merge identical ballots, keeping first-appearance order."""
        counts: Counter = Counter()
        for b, w in zip(self.ballots, self.weights):
            counts[b] += w
        return Profile.from_counter(counts, self.names)

    def as_counter(self) -> Counter:
        counts: Counter = Counter()
        for b, w in zip(self.ballots, self.weights):
            counts[b] += w
        return counts

    def same_multiset(self, other: Profile) -> bool:
        return self.m == other.m and self.as_counter() == other.as_counter()

    def scaled(self, factor: int) -> Profile:
        return Profile(self.ballots, tuple(w * factor for w in self.weights), self.names)

    def format_ballot(self, ballot: Ballot) -> str:
        return ">".join(self.names[c] for c in ballot)

    @cached_property
    def positions(self) -> np.ndarray:
        """``positions[i, c]`` is the 1-based rank of candidate ``c`` in ballot ``i``."""
        order = np.asarray(self.ballots, dtype=np.int64)
        pos = np.empty_like(order)
        rows = np.arange(order.shape[0])[:, None]
        pos[rows, order] = np.arange(1, self.m + 1)
        return pos

    @cached_property
    def pair_sums(self) -> tuple[np.ndarray, np.ndarray]:
        """Weighted group sizes and distance sums for every ordered pair.

        Returns ``(count, total)`` with ``count[a, b] = |V^{a>b}|`` and
        ``total[a, b]`` the sum of ``rank_distance(v, a, b)`` over voters
        preferring ``a`` to ``b``, both weighted by multiplicity.
        """
        pos = self.positions
        w = np.asarray(self.weights, dtype=np.int64)
        # dist[i, a, b] = pos[i, b] - pos[i, a]
        dist = pos[:, None, :] - pos[:, :, None]
        ahead = dist > 0
        count = np.einsum("i,iab->ab", w, ahead.astype(np.int64))
        total = np.einsum("i,iab->ab", w, np.where(ahead, dist, 0))
        return count, total


def _check_candidate(ballot: Sequence[int], c: int) -> None:
    if not 0 <= c < len(ballot):
        raise DomainError(f"candidate {c} is not in the roster of size {len(ballot)}")


def position(ballot: Sequence[int], c: int) -> int:
    """1-based rank of candidate ``c`` in ``ballot``."""
    _check_candidate(ballot, c)
    return list(ballot).index(c) + 1


def rank_distance(ballot: Sequence[int], a: int, b: int) -> int:
    """Signed distance ``position(b) - position(a)``; positive iff ``a`` is preferred."""
    if a == b:
        raise DomainError("rank distance needs two distinct candidates")
    return position(ballot, b) - position(ballot, a)


@dataclass(frozen=True)
class Partition:
    """Voters split by their order of a pair ``(a, b)``."""

    weight_ab: int
    weight_ba: int
    prefer_a: tuple[tuple[Ballot, int], ...]
    prefer_b: tuple[tuple[Ballot, int], ...]


def partition_by_preference(profile: Profile, pair: tuple[int, int]) -> Partition:
    """Split the profile into the voters preferring ``a`` to ``b`` and the rest.

    ``pair`` is taken in the order given, so ``weight_ab`` counts voters with
    ``pair[0]`` above ``pair[1]``.
    """
    a, b = pair
    if a == b:
        raise DomainError("a pair needs two distinct candidates")
    _check_candidate(range(profile.m), a)
    _check_candidate(range(profile.m), b)
    pa, pb = [], []
    for ballot, w in zip(profile.ballots, profile.weights):
        (pa if rank_distance(ballot, a, b) > 0 else pb).append((ballot, w))
    return Partition(sum(w for _, w in pa), sum(w for _, w in pb), tuple(pa), tuple(pb))


def is_conflicting(profile: Profile, pair: tuple[int, int]) -> bool:
    a, b = pair
    if a == b:
        raise DomainError("a pair needs two distinct candidates")
    count, _ = profile.pair_sums
    return bool(count[a, b] > 0 and count[b, a] > 0)


def conflicting_pairs(profile: Profile) -> list[Pair]:
    count, _ = profile.pair_sums
    return [p for p in all_pairs(profile.m) if count[p.a, p.b] > 0 and count[p.b, p.a] > 0]


def reverse_profile(profile: Profile) -> Profile:
    return Profile(tuple(b[::-1] for b in profile.ballots), profile.weights, profile.names)


def antagonize_ballot(ballot: Sequence[int], a: int, b: int) -> Ballot:
    """Move the preferred of ``a``/``b`` to the top and the other to the bottom."""
    if a == b:
        raise DomainError("antagonization needs two distinct candidates")
    top, bottom = (a, b) if rank_distance(ballot, a, b) > 0 else (b, a)
    middle = tuple(c for c in ballot if c != a and c != b)
    return (top, *middle, bottom)


def antagonize(profile: Profile, pair: tuple[int, int]) -> Profile:
    a, b = pair
    return Profile(
        tuple(antagonize_ballot(ballot, a, b) for ballot in profile.ballots),
        profile.weights,
        profile.names,
    )
