"""Axiom checks for pair-selection rules on concrete profiles.

:func:`check_axiom` decides whether one rule satisfies one axiom on one
profile and, when it does not, returns a witness that can be replayed.
:func:`search_counterexample` runs the check over randomly generated
profiles.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    DomainError,
    Pair,
    Profile,
    all_pairs,
    antagonize,
    conflicting_pairs,
    reverse_profile,
)
from .generators import GeneratorConfig, generate
from .rules import Rule, select


class Axiom(enum.Enum):
    REVERSE_STABILITY = "reverse-stability"
    CONFLICT_CONSISTENCY = "conflict-consistency"
    UNANIMITY = "unanimity"
    ANTAGONIZATION_CONSISTENCY = "antagonization-consistency"
    MATCHING_DOMINATION = "matching-domination"
    CONFLICT_MONOTONICITY = "conflict-monotonicity"
    BALANCE_PREFERENCE = "balance-preference"

    @classmethod
    def parse(cls, text: str) -> Axiom:
        key = text.strip().lower().replace("_", "-").replace(" ", "-")
        for axiom in cls:
            if key in (axiom.value, axiom.value.replace("-", ""), axiom.name.lower()):
                return axiom
        raise DomainError(f"unknown axiom {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Witness:
    """Evidence of a violation: the profile to re-run and what goes wrong in it."""

    profile: Profile
    pairs: tuple[Pair, ...]
    description: str
    # profile derived from ``profile`` by the axiom's transformation, if any
    derived: Profile | None = None


@dataclass(frozen=True)
class AxiomReport:
    axiom: Axiom
    rule: Rule
    holds: bool
    witness: Witness | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("a witness must be present exactly when the axiom fails")


def _abs_distances(profile: Profile, a: int, b: int) -> tuple[list[int], list[int]]:
    """Absolute distances of the voters preferring ``a`` and of those preferring ``b``."""
    pos = profile.positions
    prefer_a, prefer_b = [], []
    for row, w in zip(pos, profile.weights):
        d = int(row[b] - row[a])
        (prefer_a if d > 0 else prefer_b).extend([abs(d)] * w)
    return prefer_a, prefer_b


def _sorted_dominates(big: list[int], small: list[int]) -> bool:
    if len(big) != len(small):
        return False
    return all(x >= y for x, y in zip(sorted(big, reverse=True), sorted(small, reverse=True)))


def matching_dominates(profile: Profile, dominator: tuple[int, int], dominated: tuple[int, int]) -> bool:
    """Whether ``dominator`` matching-dominates ``dominated``.

    A group-respecting bijection with weakly larger distances exists iff the
    groups have equal sizes and their descending-sorted distance vectors
    dominate element-wise; it is strict somewhere iff the grand totals differ.
    The dominated pair is unordered, so both ways of aligning its groups with
    the dominator's are tried.
    """
    a, b = dominator
    x, y = dominated
    for p in (dominator, dominated):
        if p[0] == p[1]:
            raise DomainError("a pair needs two distinct candidates")
    ab, ba = _abs_distances(profile, a, b)
    xy, yx = _abs_distances(profile, x, y)
    if not (ab and ba and xy and yx):
        raise DomainError("matching domination is defined for conflicting pairs only")
    if sum(ab) + sum(ba) == sum(xy) + sum(yx):
        return False
    return (_sorted_dominates(ab, xy) and _sorted_dominates(ba, yx)) or (
        _sorted_dominates(ab, yx) and _sorted_dominates(ba, xy)
    )


def _transposed(ballot: tuple[int, ...], i: int) -> tuple[int, ...]:
    out = list(ballot)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def monotonicity_moves(profile: Profile, pair: Pair):
    """Yield ``(ballot_index, new_profile, description)`` for every single adjacent
    swap in one voter's ballot that moves ``a`` or ``b`` away from the other."""
    a, b = pair
    for idx, (ballot, w) in enumerate(zip(profile.ballots, profile.weights)):
        pa, pb = ballot.index(a), ballot.index(b)
        top, bottom = (a, b) if pa < pb else (b, a)
        ptop, pbottom = min(pa, pb), max(pa, pb)
        swaps = []
        if ptop > 0:
            swaps.append((ptop - 1, f"raise {profile.names[top]} one place"))
        if pbottom < profile.m - 1:
            swaps.append((pbottom, f"lower {profile.names[bottom]} one place"))
        for i, what in swaps:
            new_ballot = _transposed(ballot, i)
            ballots = list(profile.ballots)
            weights = list(profile.weights)
            if w == 1:
                ballots[idx] = new_ballot
            else:
                weights[idx] = w - 1
                ballots.append(new_ballot)
                weights.append(1)
            desc = f"in one copy of ballot {profile.format_ballot(ballot)}: {what}"
            yield idx, Profile(tuple(ballots), tuple(weights), profile.names), desc


def _fail(axiom, rule, profile, pairs, description, derived=None, **details) -> AxiomReport:
    return AxiomReport(axiom, rule, False, Witness(profile, tuple(pairs), description, derived), details)


def check_axiom(axiom: Axiom, rule: Rule, profile: Profile) -> AxiomReport:
    """Decide whether ``rule`` satisfies ``axiom`` on ``profile``."""
    outcome = select(rule, profile)
    winners = outcome.winners
    names = profile.names

    if axiom is Axiom.REVERSE_STABILITY:
        rev = select(rule, reverse_profile(profile)).winners
        if set(rev) != set(winners):
            return _fail(
                axiom, rule, profile, winners,
                f"winners {_fmt(winners, names)} become {_fmt(rev, names)} on the reversed profile",
                reverse_profile(profile),
            )
        return AxiomReport(axiom, rule, True)

    if axiom is Axiom.CONFLICT_CONSISTENCY:
        conflicting = set(conflicting_pairs(profile))
        if conflicting:
            bad = [p for p in winners if p not in conflicting]
            if bad:
                return _fail(axiom, rule, profile, bad, f"non-conflicting winner {_fmt(bad, names)}")
        return AxiomReport(axiom, rule, True)

    if axiom is Axiom.UNANIMITY:
        tops = {ballot[0] for ballot in profile.ballots}
        if len(tops) != 1:
            return AxiomReport(axiom, rule, True, details={"unanimous_top": None})
        top = tops.pop()
        in_some = any(top in p for p in winners)
        in_every = all(top in p for p in winners)
        details = {"unanimous_top": top, "in_some_winner": in_some, "in_every_winner": in_every}
        if not in_every:
            missing = [p for p in winners if top not in p]
            return _fail(
                axiom, rule, profile, missing,
                f"unanimous top {names[top]} missing from winner {_fmt(missing, names)}", **details,
            )
        return AxiomReport(axiom, rule, True, details=details)

    if axiom is Axiom.ANTAGONIZATION_CONSISTENCY:
        for p in winners:
            ant = antagonize(profile, p)
            if p not in select(rule, ant).winners:
                return _fail(axiom, rule, profile, [p], f"{p.label(names)} loses after antagonization", ant)
        return AxiomReport(axiom, rule, True)

    if axiom is Axiom.MATCHING_DOMINATION:
        conflicting = conflicting_pairs(profile)
        for p in winners:
            if p not in conflicting:
                continue
            for q in conflicting:
                if q != p and matching_dominates(profile, q, p):
                    return _fail(
                        axiom, rule, profile, [p, q],
                        f"winner {p.label(names)} is matching-dominated by {q.label(names)}",
                    )
        return AxiomReport(axiom, rule, True)

    if axiom is Axiom.CONFLICT_MONOTONICITY:
        for p in winners:
            for _, moved, desc in monotonicity_moves(profile, p):
                if p not in select(rule, moved).winners:
                    return _fail(axiom, rule, profile, [p], f"{p.label(names)} loses after: {desc}", moved)
        return AxiomReport(axiom, rule, True)

    if axiom is Axiom.BALANCE_PREFERENCE:
        pos = profile.positions
        signed = {}
        for p in all_pairs(profile.m):
            d = (pos[:, p.b] - pos[:, p.a]).tolist()
            absd = sorted(x for di, w in zip(d, profile.weights) for x in [abs(di)] * w)
            net = abs(sum(di * w for di, w in zip(d, profile.weights)))
            signed[p] = (tuple(absd), net)
        for xy in winners:
            for ab in signed:
                if ab != xy and signed[ab][0] == signed[xy][0] and signed[ab][1] < signed[xy][1]:
                    return _fail(
                        axiom, rule, profile, [xy, ab],
                        f"winner {xy.label(names)} is less balanced than {ab.label(names)} "
                        "with the same absolute distances",
                    )
        return AxiomReport(axiom, rule, True)

    raise DomainError(f"unsupported axiom {axiom}")


def _fmt(pairs: Sequence[Pair], names: Sequence[str]) -> str:
    return ", ".join(p.label(names) for p in pairs)


def _search_chunk(args) -> tuple[int, AxiomReport] | None:
    axiom, rule, configs, seed, start, stop = args
    for trial in range(start, stop):
        cfg = configs[trial % len(configs)]
        profile = generate(cfg.with_seed(seed, trial))
        report = check_axiom(axiom, rule, profile)
        if not report.holds:
            return trial, report
    return None


def default_workers() -> int:
    env = os.environ.get("CONFLICT_SELECT_THREADS")
    if env:
        return max(1, int(env))
    return 1


def search_counterexample(
    axiom: Axiom,
    rule: Rule,
    gen: GeneratorConfig | Sequence[GeneratorConfig],
    budget: int,
    seed: int = 0,
    workers: int | None = None,
) -> tuple[int, AxiomReport] | None:
    """Look for a profile on which ``rule`` violates ``axiom``.

    Trial ``t`` uses ``gen[t % len(gen)]`` reseeded from ``(seed, t)``, so the
    result depends only on the arguments. Returns ``(trial, report)`` for the
    first failing trial, or ``None`` if all ``budget`` trials pass.
    """
    if budget < 1:
        raise DomainError("budget must be at least 1")
    configs = [gen] if isinstance(gen, GeneratorConfig) else list(gen)
    if not configs:
        raise DomainError("no generator configuration given")
    workers = workers or default_workers()
    if workers <= 1:
        return _search_chunk((axiom, rule, configs, seed, 0, budget))
    step = -(-budget // workers)
    chunks = [(axiom, rule, configs, seed, s, min(s + step, budget)) for s in range(0, budget, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        found = [r for r in pool.map(_search_chunk, chunks) if r is not None]
    return min(found, key=lambda r: r[0]) if found else None
