"""Pair-selection rules: the conflictual rules and two classic baselines.

All rules score every unordered pair and return every pair attaining the
maximum, so ties are never broken. Conflictual scores:

============  ==========================================================
MaxSum        ``|V^{b>a}| S_ab + |V^{a>b}| S_ba``
MaxNash       ``S_ab * S_ba``
MaxSwap       ``min(S_ab, S_ba)``
p-MaxPolar    ``alpha * beta**p``
============  ==========================================================

Baselines: ``Borda2`` scores a pair by the sum of both candidates' Borda
scores (maximizing this selects the top two Borda candidates), ``CC2`` gives
``m - min(v(x), v(y))`` points per voter.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import ConfigError, DomainError, Pair, Profile, all_pairs
from .metrics import group_sums

Score = Union[int, Fraction, float]

CONFLICTUAL = ("maxsum", "maxnash", "maxswap", "maxpolar")
BASELINES = ("borda", "cc")

# relative margin for comparing non-integer MaxPolar exponents in floating point
FLOAT_TIE_MARGIN = 1e-12

_DISPLAY = {
    "maxsum": "MaxSum",
    "maxnash": "MaxNash",
    "maxswap": "MaxSwap",
    "borda": "Borda2",
    "cc": "CC2",
}


@dataclass(frozen=True)
class Rule:
    """Identifier of a pair-selection rule.

    ``kind`` is one of ``maxsum``, ``maxnash``, ``maxswap``, ``maxpolar``,
    ``borda`` or ``cc``; ``p`` is the MaxPolar exponent.
    """

    kind: str
    p: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in CONFLICTUAL + BASELINES:
            raise ConfigError(f"unknown rule {self.kind!r}")
        if self.kind == "maxpolar":
            if self.p is None:
                raise ConfigError("MaxPolar needs an exponent p")
            p = Fraction(self.p)
            if p <= 0:
                raise ConfigError(f"MaxPolar exponent must be positive, got {p}")
            object.__setattr__(self, "p", p)
        elif self.p is not None:
            raise ConfigError(f"rule {self.kind} takes no exponent")

    @property
    def conflictual(self) -> bool:
        return self.kind in CONFLICTUAL

    @property
    def exact(self) -> bool:
        return self.kind != "maxpolar" or self.p.denominator == 1

    @property
    def name(self) -> str:
        if self.kind == "maxpolar":
            return f"{self.p}-MaxPolar"
        return _DISPLAY[self.kind]

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> Rule:
        """Parse names such as ``MaxNash``, ``borda``, ``2-MaxPolar`` or ``maxpolar:0.5``."""
        key = text.strip().lower().replace("_", "")
        match = re.fullmatch(r"(?:([\d./]+)-)?maxpolar(?:[:=]([\d./]+))?", key)
        if match:
            p = match.group(1) or match.group(2)
            if p is None:
                raise ConfigError("MaxPolar needs an exponent, e.g. 2-MaxPolar")
            try:
                return cls("maxpolar", Fraction(p))
            except ValueError:
                raise ConfigError(f"bad MaxPolar exponent {p!r}") from None
        aliases = {"borda2": "borda", "cc2": "cc", "chamberlincourant": "cc"}
        return cls(aliases.get(key, key))


MAXSUM = Rule("maxsum")
MAXNASH = Rule("maxnash")
MAXSWAP = Rule("maxswap")
MAXPOLAR2 = Rule("maxpolar", Fraction(2))
BORDA = Rule("borda")
CC = Rule("cc")
CONFLICTUAL_RULES = (MAXSUM, MAXNASH, MAXSWAP, MAXPOLAR2)
ALL_RULES = CONFLICTUAL_RULES + (BORDA, CC)


def _borda_scores(profile: Profile) -> list[int]:
    m = profile.m
    scores = [0] * m
    for ballot, w in zip(profile.ballots, profile.weights):
        for rank, c in enumerate(ballot):
            scores[c] += w * (m - 1 - rank)
    return scores


def _cc_score(profile: Profile, pair: Pair) -> int:
    pos = profile.positions
    best = pos[:, [pair.a, pair.b]].min(axis=1)
    return sum(w * (profile.m - int(p)) for w, p in zip(profile.weights, best))


def score(rule: Rule, profile: Profile, pair: tuple[int, int]) -> Score:
    """Score of ``pair`` under ``rule``; exact unless MaxPolar has a fractional exponent."""
    pair = Pair.of(*pair)
    if rule.kind == "borda":
        scores = _borda_scores(profile)
        return scores[pair.a] + scores[pair.b]
    if rule.kind == "cc":
        return _cc_score(profile, pair)
    g = group_sums(profile, pair)
    if rule.kind == "maxsum":
        return g.n_ba * g.s_ab + g.n_ab * g.s_ba
    if rule.kind == "maxnash":
        return g.s_ab * g.s_ba
    if rule.kind == "maxswap":
        return min(g.s_ab, g.s_ba)
    alpha = Fraction(2 * min(g.n_ab, g.n_ba), g.n)
    beta = Fraction(g.s_ab + g.s_ba, g.n * (g.m - 1))
    if rule.exact:
        return alpha * beta ** int(rule.p)
    return float(alpha) * float(beta) ** float(rule.p)


def score_all(rule: Rule, profile: Profile) -> dict[Pair, Score]:
    pairs = all_pairs(profile.m)
    if rule.kind == "borda":
        scores = _borda_scores(profile)
        return {p: scores[p.a] + scores[p.b] for p in pairs}
    return {p: score(rule, profile, p) for p in pairs}


@dataclass(frozen=True)
class RuleOutcome:
    """Winning pairs of a rule on a profile, with every pair's score.

    ``approximate`` is set when scores were compared in floating point with
    the ``FLOAT_TIE_MARGIN`` relative margin.
    """

    rule: Rule
    winners: tuple[Pair, ...]
    scores: dict[Pair, Score]
    approximate: bool = False

    @property
    def best(self) -> Score:
        return self.scores[self.winners[0]]

    @property
    def no_conflict(self) -> bool:
        """True when a conflictual rule found no conflicting pair (all scores 0)."""
        return self.rule.conflictual and self.best == 0

    def __contains__(self, pair: object) -> bool:
        return pair in self.winners


def select(rule: Rule, profile: Profile) -> RuleOutcome:
    """All pairs maximizing ``rule``'s score, in lexicographic order."""
    if profile.m < 2:
        raise DomainError("selecting a pair needs at least two candidates")
    scores = score_all(rule, profile)
    top = max(scores.values())
    if rule.exact:
        winners = tuple(p for p, s in scores.items() if s == top)
    else:
        winners = tuple(
            p for p, s in scores.items() if math.isclose(s, top, rel_tol=FLOAT_TIE_MARGIN, abs_tol=0.0)
        )
    return RuleOutcome(rule, winners, scores, approximate=not rule.exact)
