"""Batch experiments producing plot-ready rows.

Each trial draws one profile (from a generator, or by sampling voters and a
candidate subset from a real election), runs every rule, and records the
metrics of the winning pairs and of one uniformly random pair. Trials are
independent and seeded by ``(seed, trial)``, so results do not depend on the
number of worker processes.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .axioms import default_workers
from .core import ConfigError, Pair, Profile, all_pairs
from .generators import GeneratorConfig, generate, generate_euclidean, rng_for
from .metrics import assess_all, assess_pair
from .preflib import IngestPolicy, RawElection, materialize
from .rules import CONFLICTUAL_RULES, Rule, select

WINNER_COLUMNS = ("trial", "rule", "pair", "alpha", "beta", "gamma", "phi", "score")
POSITION_COLUMNS = ("trial", "rule", "pair", "xa", "ya", "xb", "yb", "center_distance")
RANDOM_COLUMNS = ("trial", "pair", "alpha", "beta", "gamma", "phi")
SUMMARY_COLUMNS = ("rule", "metric", "mean", "std", "count")
PROFILE_COLUMNS = ("psi", "trial", "mean_alpha", "max_beta", "mean_gamma", "mean_phi")
SWEEP_COLUMNS = ("psi", "profiles", "mean_alpha", "max_beta", "mean_gamma", "mean_phi")
METRICS = ("alpha", "beta", "gamma", "phi")


@dataclass(frozen=True)
class ExperimentSpec:
    """One batch experiment.

    Exactly one of ``generator`` and ``dataset`` is set. With a dataset, each
    trial keeps ``m`` random candidates and draws ``n`` voters proportionally
    to their weight.
    """

    rules: tuple[Rule, ...] = CONFLICTUAL_RULES
    generator: GeneratorConfig | None = None
    dataset: RawElection | None = None
    trials: int = 1000
    n: int = 100
    m: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if (self.generator is None) == (self.dataset is None):
            raise ConfigError("give either a generator or a dataset")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.rules:
            raise ConfigError("at least one rule is needed")
        if self.dataset is not None and self.m > self.dataset.m:
            raise ConfigError(f"dataset has only {self.dataset.m} candidates, m={self.m} requested")

    @property
    def euclidean(self) -> bool:
        return self.generator is not None and self.generator.kind == "euclidean"


@dataclass
class ExperimentResult:
    winners: list[dict]
    random_pairs: list[dict]
    positions: list[dict]

    def summary(self) -> list[dict]:
        return summarize(self.winners)


def _fmt(x) -> str:
    return format(float(x), ".10g")


def _pair_label(pair: Pair, names: Sequence[str]) -> str:
    return f"{names[pair.a]}|{names[pair.b]}"


def profile_metrics(profile: Profile) -> dict[str, float]:
    """Mean alpha, max beta, mean gamma and mean phi over all pairs."""
    rows = assess_all(profile)
    k = len(rows)
    return {
        "mean_alpha": float(sum(r.alpha for r in rows) / k),
        "max_beta": float(max(r.beta for r in rows)),
        "mean_gamma": float(sum(r.gamma for r in rows) / k),
        "mean_phi": float(sum(r.phi for r in rows) / k),
    }


def _trial_profile(spec: ExperimentSpec, trial: int):
    if spec.generator is not None:
        cfg = replace(spec.generator, n=spec.n, m=spec.m).with_seed(spec.seed, trial)
        if spec.euclidean:
            sample = generate_euclidean(cfg)
            return sample.profile, sample.candidates
        return generate(cfg), None
    rng = rng_for(spec.seed, trial)
    subset = tuple(sorted(rng.choice(spec.dataset.m, size=spec.m, replace=False).tolist()))
    trial_seed = int(rng.integers(2**63))
    policy = IngestPolicy(candidate_subset=subset, subsample=(spec.n, trial_seed))
    return materialize(spec.dataset, policy, seed=trial_seed), None


def run_trial(spec: ExperimentSpec, trial: int) -> ExperimentResult:
    profile, coords = _trial_profile(spec, trial)
    names = profile.names
    winners, positions = [], []
    for rule in spec.rules:
        outcome = select(rule, profile)
        for pair in outcome.winners:
            a = assess_pair(profile, pair)
            winners.append({
                "trial": trial, "rule": rule.name, "pair": _pair_label(pair, names),
                "alpha": a.alpha, "beta": a.beta, "gamma": a.gamma, "phi": a.phi,
                "score": outcome.scores[pair],
            })
            if coords is not None:
                pa, pb = coords[pair.a], coords[pair.b]
                dist = (math.dist(pa, (0.5, 0.5)) + math.dist(pb, (0.5, 0.5))) / 2
                positions.append({
                    "trial": trial, "rule": rule.name, "pair": _pair_label(pair, names),
                    "xa": pa[0], "ya": pa[1], "xb": pb[0], "yb": pb[1], "center_distance": dist,
                })
    pairs = all_pairs(profile.m)
    pick = pairs[_random_index(spec, trial, len(pairs))]
    a = assess_pair(profile, pick)
    random_row = {
        "trial": trial, "pair": _pair_label(pick, names),
        "alpha": a.alpha, "beta": a.beta, "gamma": a.gamma, "phi": a.phi,
    }
    return ExperimentResult(winners, [random_row], positions)


def _random_index(spec: ExperimentSpec, trial: int, size: int) -> int:
    # separate stream from the profile's so adding the baseline leaves profiles unchanged
    return int(rng_for(spec.seed ^ 0x5EED, trial).integers(size))


def _run_chunk(args):
    spec, start, stop = args
    return [run_trial(spec, t) for t in range(start, stop)]


def _pool_map(fn, spec, count: int, workers: int) -> list:
    if workers <= 1:
        return fn((spec, 0, count))
    step = -(-count // (workers * 4))
    chunks = [(spec, s, min(s + step, count)) for s in range(0, count, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [row for part in pool.map(fn, chunks) for row in part]


def run_experiment(spec: ExperimentSpec, workers: int | None = None) -> ExperimentResult:
    """Run all trials; rows come back ordered by trial index."""
    parts = _pool_map(_run_chunk, spec, spec.trials, workers or default_workers())
    result = ExperimentResult([], [], [])
    for part in parts:
        result.winners += part.winners
        result.random_pairs += part.random_pairs
        result.positions += part.positions
    return result


def summarize(winner_rows: list[dict]) -> list[dict]:
    """Mean and standard deviation of each metric over each rule's winner rows."""
    by_rule: dict[str, list[dict]] = {}
    for row in winner_rows:
        by_rule.setdefault(row["rule"], []).append(row)
    out = []
    for rule, rows in by_rule.items():
        for metric in METRICS:
            values = [float(r[metric]) for r in rows]
            out.append({
                "rule": rule, "metric": metric, "mean": statistics.fmean(values),
                "std": statistics.pstdev(values), "count": len(values),
            })
    return out


def mean_by_rule(rows: list[dict], column: str) -> dict[str, float]:
    acc: dict[str, list[float]] = {}
    for row in rows:
        acc.setdefault(row["rule"], []).append(float(row[column]))
    return {rule: statistics.fmean(v) for rule, v in acc.items()}


def _sweep_chunk(args):
    (base, psi, seed), start, stop = args
    rows = []
    for t in range(start, stop):
        cfg = replace(base, psi=psi).with_seed(seed, t)
        rows.append({"psi": psi, "trial": t, **profile_metrics(generate(cfg))})
    return rows


def mallows_sweep(
    base: GeneratorConfig,
    psis: Sequence[float],
    profiles: int = 50,
    seed: int = 0,
    workers: int | None = None,
) -> tuple[list[dict], list[dict]]:
    """Per-profile metrics and their averages for each dispersion value.

    The profile for ``(psi, t)`` uses stream ``t`` with a seed derived from
    ``seed`` and the index of ``psi`` in ``psis``.
    """
    if base.kind != "mallows":
        raise ConfigError("a sweep needs a Mallows generator")
    workers = workers or default_workers()
    per_profile, summary = [], []
    for i, psi in enumerate(psis):
        point_seed = int(np.random.SeedSequence([seed, i]).generate_state(1, np.uint64)[0])
        rows = _pool_map(_sweep_chunk, (base, float(psi), point_seed), profiles, workers)
        per_profile += rows
        summary.append({
            "psi": float(psi), "profiles": len(rows),
            **{k: statistics.fmean(r[k] for r in rows) for k in ("mean_alpha", "max_beta", "mean_gamma", "mean_phi")},
        })
    return per_profile, summary


def format_row(row: dict, columns: Sequence[str]) -> list[str]:
    out = []
    for col in columns:
        value = row[col]
        out.append(value if isinstance(value, str) else str(value) if isinstance(value, int) else _fmt(value))
    return out
