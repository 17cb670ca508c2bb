"""Reading ordinal election files and the native profile document.

Two input layouts are understood:

* PrefLib ``.soc/.soi/.toc/.toi`` files with ``# NUMBER ALTERNATIVES`` and
  ``# ALTERNATIVE NAME i`` header lines followed by ``count: 1,2,{3,4}`` lines;
* the legacy layout: candidate count, ``i,name`` lines, a totals line, then
  ``count,1,2,{3,4}`` lines.

Candidates are 1-based in both. Counts may be decimal or ``p/q`` fractions.

The native profile document is what crosses process boundaries::

    # comments are allowed
    m n
    <m candidate name lines>
    multiplicity: i,j,k,...      (0-based candidate indices)
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import ConfigError, ConflictualError, Profile
from .generators import rng_for

log = logging.getLogger(__name__)

Ranking = tuple[tuple[int, ...], ...]


class ParseError(ConflictualError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.message = message
        self.line = line
        self.source = source


class DataError(ConflictualError, ValueError):
    """Well-formed input whose content cannot be used."""


@dataclass(frozen=True)
class RawElection:
    """Election as read from a file: rankings may contain ties and be truncated.

    ``entries`` holds ``(weight, ranking)`` with ``ranking`` a tuple of tie
    groups of 0-based candidate indices, most preferred group first.
    """

    names: tuple[str, ...]
    entries: tuple[tuple[Fraction, Ranking], ...]

    @property
    def m(self) -> int:
        return len(self.names)

    def is_complete(self, ranking: Ranking) -> bool:
        return sum(len(g) for g in ranking) == self.m


_RANKING_TOKEN = re.compile(r"\{[^{}]*\}|[^,{}]+")


def _parse_ranking(text: str, m: int, lineno: int) -> Ranking:
    groups = []
    seen: set[int] = set()
    text = text.strip()
    if not text:
        return ()
    pos = 0
    for match in _RANKING_TOKEN.finditer(text):
        between = text[pos:match.start()].strip()
        if between not in ("", ","):
            raise ParseError(f"unexpected {between!r} in ranking", lineno)
        pos = match.end()
        token = match.group().strip()
        if not token:
            continue
        items = token[1:-1].split(",") if token.startswith("{") else [token]
        group = []
        for item in items:
            item = item.strip()
            if not item:
                continue
            try:
                c = int(item)
            except ValueError:
                raise ParseError(f"bad candidate {item!r}", lineno) from None
            if not 1 <= c <= m:
                raise ParseError(f"candidate {c} outside 1..{m}", lineno)
            if c - 1 in seen:
                raise DataError(f"line {lineno}: candidate {c} ranked twice")
            seen.add(c - 1)
            group.append(c - 1)
        if group:
            groups.append(tuple(group))
    if text[pos:].strip() not in ("", ","):
        raise ParseError(f"unexpected {text[pos:]!r} in ranking", lineno)
    return tuple(groups)


def _parse_weight(text: str, lineno: int) -> Fraction:
    try:
        w = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad count {text.strip()!r}", lineno) from None
    if w <= 0:
        raise DataError(f"line {lineno}: count must be positive")
    return w


def parse(content: str, source: str | None = None) -> RawElection:
    """Parse a PrefLib-style file into a :class:`RawElection`."""
    try:
        lines = content.splitlines()
        if any(line.startswith("# NUMBER ALTERNATIVES") for line in lines):
            return _parse_modern(lines)
        return _parse_legacy(lines)
    except ParseError as exc:
        if source and exc.source is None:
            raise ParseError(exc.message, exc.line, source) from None
        raise


def _parse_modern(lines: list[str]) -> RawElection:
    m = None
    names: dict[int, str] = {}
    entries = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key = key.strip()
            if key == "NUMBER ALTERNATIVES":
                try:
                    m = int(value)
                except ValueError:
                    raise ParseError(f"bad candidate count {value.strip()!r}", lineno) from None
            elif key.startswith("ALTERNATIVE NAME"):
                try:
                    names[int(key.split()[-1])] = value.strip()
                except ValueError:
                    raise ParseError(f"bad header {line!r}", lineno) from None
            continue
        if m is None:
            raise ParseError("ranking before NUMBER ALTERNATIVES", lineno)
        count, sep, ranking = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'count: ranking', got {line!r}", lineno)
        entries.append((_parse_weight(count, lineno), _parse_ranking(ranking, m, lineno)))
    if m is None:
        raise ParseError("missing NUMBER ALTERNATIVES header")
    return RawElection(tuple(names.get(i, str(i)) for i in range(1, m + 1)), tuple(entries))


def _parse_legacy(lines: list[str]) -> RawElection:
    body = [(i, line.strip()) for i, line in enumerate(lines, 1) if line.strip() and not line.startswith("#")]
    if not body:
        raise ParseError("empty file")
    lineno, first = body[0]
    try:
        m = int(first)
    except ValueError:
        raise ParseError(f"expected candidate count, got {first!r}", lineno) from None
    if len(body) < m + 2:
        raise ParseError("file ends inside the header")
    names = {}
    for lineno, line in body[1:m + 1]:
        idx, sep, name = line.partition(",")
        try:
            names[int(idx)] = name.strip()
        except ValueError:
            raise ParseError(f"expected 'index,name', got {line!r}", lineno) from None
        if not sep:
            raise ParseError(f"expected 'index,name', got {line!r}", lineno)
    entries = []
    # body[m + 1] is the totals line, ignored
    for lineno, line in body[m + 2:]:
        if ":" in line:
            count, _, ranking = line.partition(":")
        else:
            count, _, ranking = line.partition(",")
        entries.append((_parse_weight(count, lineno), _parse_ranking(ranking, m, lineno)))
    return RawElection(tuple(names.get(i, str(i)) for i in range(1, m + 1)), tuple(entries))


def _format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def serialize(raw: RawElection) -> str:
    """Write ``raw`` in the PrefLib header layout; :func:`parse` reads it back unchanged."""
    out = [f"# NUMBER ALTERNATIVES: {raw.m}"]
    out += [f"# ALTERNATIVE NAME {i}: {name}" for i, name in enumerate(raw.names, 1)]
    out.append(f"# NUMBER UNIQUE ORDERS: {len(raw.entries)}")
    for w, ranking in raw.entries:
        parts = []
        for group in ranking:
            ids = ",".join(str(c + 1) for c in group)
            parts.append(ids if len(group) == 1 else "{" + ids + "}")
        out.append(f"{_format_weight(w)}: {','.join(parts)}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class IngestPolicy:
    """How a :class:`RawElection` becomes a strict, integer-weighted profile.

    ``weight_scale`` converts rational weights to multiplicities by rounding
    ``weight * weight_scale`` to the nearest integer. ``candidate_subset``
    lists 0-based candidates to keep. ``subsample`` is ``(n, seed)``: draw
    ``n`` voters with probability proportional to weight, with replacement.
    """

    tie_break: str = "random"
    incomplete: str = "drop"
    weight_scale: int = 1
    candidate_subset: tuple[int, ...] | None = None
    subsample: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.tie_break not in ("random", "index"):
            raise ConfigError("tie_break must be 'random' or 'index'")
        if self.incomplete not in ("drop", "error"):
            raise ConfigError("incomplete must be 'drop' or 'error'")
        if self.weight_scale < 1:
            raise ConfigError("weight_scale must be at least 1")
        if self.subsample is not None and self.subsample[0] < 1:
            raise ConfigError("subsample size must be at least 1")


def project(ranking: Ranking, keep: Sequence[int]) -> Ranking:
    """Restrict a ranking to ``keep`` (old indices), renumbering candidates by their place in ``keep``."""
    new_index = {c: i for i, c in enumerate(keep)}
    groups = (tuple(new_index[c] for c in g if c in new_index) for g in ranking)
    return tuple(g for g in groups if g)


def materialize(raw: RawElection, policy: IngestPolicy = IngestPolicy(), seed: int = 0) -> Profile:
    """Turn a raw election into a :class:`Profile` following ``policy``."""
    names = raw.names
    if len(set(names)) != len(names):
        raise DataError("candidate names must be unique")
    entries = list(raw.entries)
    if policy.candidate_subset is not None:
        keep = list(policy.candidate_subset)
        if len(set(keep)) != len(keep) or not all(0 <= c < raw.m for c in keep) or len(keep) < 2:
            raise ConfigError("candidate subset must list at least two distinct known candidates")
        names = tuple(raw.names[c] for c in keep)
        entries = [(w, project(r, keep)) for w, r in entries]
    m = len(names)

    complete = []
    for i, (w, ranking) in enumerate(entries):
        if sum(len(g) for g in ranking) == m:
            complete.append((w, ranking))
        elif policy.incomplete == "error":
            raise DataError(f"entry {i + 1} does not rank all {m} candidates")
    dropped = len(entries) - len(complete)
    if dropped:
        log.warning("dropped %d incomplete rankings", dropped)

    rng = rng_for(seed, 0)
    ballots = []
    weights = []
    zero = 0
    for w, ranking in complete:
        order: list[int] = []
        for group in ranking:
            group = sorted(group)
            if policy.tie_break == "random" and len(group) > 1:
                group = [group[i] for i in rng.permutation(len(group))]
            order.extend(group)
        mult = _round_half_up(w * policy.weight_scale)
        if mult == 0:
            zero += 1
            continue
        ballots.append(tuple(order))
        weights.append(mult)
    if zero:
        log.warning("dropped %d rankings whose weight rounds to zero", zero)
    if not ballots:
        raise DataError("no usable rankings left after filtering")

    profile = Profile(tuple(ballots), tuple(weights), names)
    if policy.subsample is not None:
        size, sub_seed = policy.subsample
        sub_rng = rng_for(sub_seed, 1)
        w = np.asarray(profile.weights, dtype=float)
        picks = sub_rng.choice(len(profile.ballots), size=size, p=w / w.sum())
        counts = np.bincount(picks, minlength=len(profile.ballots))
        kept = [(b, int(c)) for b, c in zip(profile.ballots, counts) if c]
        profile = Profile(tuple(b for b, _ in kept), tuple(c for _, c in kept), names)
    return profile.compressed()


def _round_half_up(x: Fraction) -> int:
    return int(x + Fraction(1, 2)) if x >= 0 else -int(-x + Fraction(1, 2))


def dumps_profile(profile: Profile, comment: str | None = None) -> str:
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append(f"{profile.m} {profile.n}")
    out += list(profile.names)
    for ballot, w in zip(profile.ballots, profile.weights):
        out.append(f"{w}: {','.join(map(str, ballot))}")
    return "\n".join(out) + "\n"


def loads_profile(text: str, source: str | None = None) -> Profile:
    """Read a native profile document."""
    body = [(i, line.strip()) for i, line in enumerate(text.splitlines(), 1)
            if line.strip() and not line.lstrip().startswith("#")]
    if not body:
        raise ParseError("empty profile document", None, source)
    lineno, header = body[0]
    try:
        m, n = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(f"expected header 'm n', got {header!r}", lineno, source) from None
    if len(body) < m + 2:
        raise ParseError("document ends before the ballots", None, source)
    names = tuple(line for _, line in body[1:m + 1])
    ballots, weights = [], []
    for lineno, line in body[m + 1:]:
        count, sep, order = line.partition(":")
        try:
            if not sep:
                raise ValueError
            weights.append(int(count))
            ballots.append(tuple(int(c) for c in order.split(",")))
        except ValueError:
            raise ParseError(f"expected 'multiplicity: i,j,...', got {line!r}", lineno, source) from None
        if weights[-1] <= 0:
            raise ParseError("multiplicity must be positive", lineno, source)
        if sorted(ballots[-1]) != list(range(m)):
            raise ParseError(f"ballot is not a permutation of 0..{m - 1}", lineno, source)
    profile = Profile(tuple(ballots), tuple(weights), names)
    if profile.n != n:
        raise ParseError(f"header says n={n} but multiplicities sum to {profile.n}", body[0][0], source)
    return profile


def read_profile(path: str | Path) -> Profile:
    path = Path(path)
    return loads_profile(path.read_text(encoding="utf-8"), str(path))


def write_profile(profile: Profile, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(dumps_profile(profile, comment), encoding="utf-8")


def read_election(path: str | Path) -> RawElection:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), str(path))
