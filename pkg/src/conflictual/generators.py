"""Synthetic preference profiles.

Characteristic profiles (identity, antagonism, uniformity), impartial culture,
1- and 2-center Mallows models and the 2D Euclidean model. Randomness comes
from a counter-based generator keyed by ``(seed, stream)`` so any profile can
be regenerated on its own.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, fields, replace
from typing import Sequence

import numpy as np

from .core import Ballot, ConfigError, DomainError, Profile

log = logging.getLogger(__name__)

KINDS = ("identity", "antagonism", "uniformity", "ic", "mallows", "euclidean")
DISTRIBUTIONS = ("uniform", "gaussian")


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator depending only on ``(seed, stream)``."""
    ss = np.random.SeedSequence(int(seed) % 2**64, spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class GeneratorConfig:
    """What profile to sample.

    ``psi`` is the Mallows dispersion (probability of a ballot proportional to
    ``psi ** KT(center, ballot)``). With ``centers=2`` each voter picks one of
    two centers uniformly; the second center is the reverse of the first
    (``second_center="reverse"``) or an independent uniformly random ranking
    (``second_center="random"``). ``sigma`` is the standard deviation of the
    Gaussian used by the Euclidean model.
    """

    kind: str
    n: int
    m: int
    seed: int = 0
    stream: int = 0
    psi: float = 0.5
    centers: int = 1
    second_center: str = "reverse"
    voter_dist: str = "uniform"
    cand_dist: str = "uniform"
    sigma: float = 0.15

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown generator {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.m < 2:
            raise ConfigError("m must be at least 2")
        if self.kind == "antagonism" and self.n % 2:
            raise ConfigError("antagonism needs an even number of voters")
        if not 0.0 <= self.psi <= 1.0:
            raise ConfigError("psi must lie in [0, 1]")
        if self.centers not in (1, 2):
            raise ConfigError("Mallows supports 1 or 2 centers")
        if self.second_center not in ("reverse", "random"):
            raise ConfigError("second_center must be 'reverse' or 'random'")
        for dist in (self.voter_dist, self.cand_dist):
            if dist not in DISTRIBUTIONS:
                raise ConfigError(f"unknown point distribution {dist!r}")
        if self.sigma <= 0:
            raise ConfigError("sigma must be positive")

    def with_seed(self, seed: int, stream: int = 0) -> GeneratorConfig:
        return replace(self, seed=seed, stream=stream)

    def to_text(self) -> str:
        """Plain ``key = value`` lines."""
        return "".join(f"{k} = {v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_text(cls, text: str) -> GeneratorConfig:
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in types:
                raise ConfigError(f"line {lineno}: cannot read {line!r}")
            conv = {"int": int, "float": float}.get(types[key], str)
            try:
                values[key] = conv(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
        return cls(**values)


def kendall_tau(b1: Sequence[int], b2: Sequence[int]) -> int:
    """Number of candidate pairs the two ballots order differently."""
    if sorted(b1) != sorted(b2) or len(set(b1)) != len(b1):
        raise DomainError("ballots must rank the same candidates")
    pos2 = {c: i for i, c in enumerate(b2)}
    seq = [pos2[c] for c in b1]
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def mallows_ballots(center: Sequence[int], psi: float, n: int, rng: np.random.Generator) -> list[Ballot]:
    """Sample ``n`` ballots by repeated insertion.

    The ``j``-th candidate of the center (0-based) is inserted at position
    ``i`` in ``0..j`` with probability proportional to ``psi ** (j - i)``,
    which yields ballots with probability ``psi ** KT(center, .) / Z``.
    """
    m = len(center)
    slots = np.zeros((n, m), dtype=np.int64)
    for j in range(1, m):
        weights = np.power(float(psi), np.arange(j, -1, -1, dtype=float))
        slots[:, j] = rng.choice(j + 1, size=n, p=weights / weights.sum())
    out = []
    for row in slots.tolist():
        ballot: list[int] = []
        for j, i in enumerate(row):
            ballot.insert(i, center[j])
        out.append(tuple(ballot))
    return out


def sample_points(dist: str, size: int, rng: np.random.Generator, sigma: float = 0.15) -> np.ndarray:
    if dist == "uniform":
        return rng.random((size, 2))
    return rng.normal(0.5, sigma, (size, 2))


def euclidean_ballots(voters: np.ndarray, candidates: np.ndarray) -> list[Ballot]:
    """Rank candidates by squared distance to each voter; ties go to the lower index."""
    d2 = ((voters[:, None, :] - candidates[None, :, :]) ** 2).sum(axis=2)
    order = np.argsort(d2, axis=1, kind="stable")
    return [tuple(row) for row in order.tolist()]


@dataclass(frozen=True)
class EuclideanSample:
    profile: Profile
    voters: np.ndarray
    candidates: np.ndarray


def generate_euclidean(config: GeneratorConfig) -> EuclideanSample:
    rng = rng_for(config.seed, config.stream)
    voters = sample_points(config.voter_dist, config.n, rng, config.sigma)
    cands = sample_points(config.cand_dist, config.m, rng, config.sigma)
    profile = _from_list(euclidean_ballots(voters, cands), config.m)
    return EuclideanSample(profile, voters, cands)


def _from_list(ballots: list[Ballot], m: int) -> Profile:
    return Profile.from_counter(Counter(ballots), tuple(f"c{i}" for i in range(m)))


def generate(config: GeneratorConfig, center: Sequence[int] | None = None) -> Profile:
    """Sample a profile; deterministic in ``config`` (including seed and stream)."""
    m, n = config.m, config.n
    names = tuple(f"c{i}" for i in range(m))
    sigma = tuple(center) if center is not None else tuple(range(m))
    if sorted(sigma) != list(range(m)):
        raise ConfigError("center must be a permutation of the candidates")
    kind = config.kind

    if kind == "identity":
        return Profile((sigma,), (n,), names)
    if kind == "antagonism":
        return Profile((sigma, sigma[::-1]), (n // 2, n // 2), names)
    if kind == "uniformity":
        perms = list(itertools.permutations(range(m)))
        if n % len(perms):
            log.warning("n=%d is not a multiple of %d!; emitting each ranking once", n, m)
            mult = 1
        else:
            mult = n // len(perms)
        return Profile(tuple(perms), (mult,) * len(perms), names)
    if kind == "euclidean":
        return generate_euclidean(config).profile

    rng = rng_for(config.seed, config.stream)
    if kind == "ic":
        return _from_list([tuple(rng.permutation(m).tolist()) for _ in range(n)], m)

    # mallows
    if config.centers == 1:
        return _from_list(mallows_ballots(sigma, config.psi, n, rng), m)
    if config.second_center == "reverse":
        other = sigma[::-1]
    else:
        other = tuple(rng.permutation(m).tolist())
    which = rng.random(n) < 0.5
    k = int(which.sum())
    ballots = mallows_ballots(sigma, config.psi, n - k, rng) + mallows_ballots(other, config.psi, k, rng)
    return _from_list(ballots, m)


def mallows_probability(center: Sequence[int], ballot: Sequence[int], psi: float) -> float:
    """Exact Mallows probability ``psi**KT / Z`` with ``Z = prod_j (1 + psi + ... + psi**(j-1))``."""
    m = len(center)
    z = math.prod(sum(psi**i for i in range(j)) for j in range(1, m + 1))
    return psi ** kendall_tau(center, ballot) / z
