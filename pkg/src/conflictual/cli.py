"""Command-line interface: ``conflict-select <command> ...``.

Exit codes: 0 success, 1 an axiom check failed, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import fixtures as fx
from .axioms import Axiom, check_axiom, search_counterexample
from .core import ConfigError, ConflictualError, DomainError, Profile
from .experiments import (
    POSITION_COLUMNS,
    PROFILE_COLUMNS,
    RANDOM_COLUMNS,
    SUMMARY_COLUMNS,
    SWEEP_COLUMNS,
    WINNER_COLUMNS,
    ExperimentSpec,
    format_row,
    mallows_sweep,
    run_experiment,
)
from .generators import KINDS, GeneratorConfig, generate
from .metrics import assess_all, assess_pair
from .preflib import IngestPolicy, dumps_profile, materialize, read_election, read_profile, write_profile
from .rules import ALL_RULES, CONFLICTUAL_RULES, Rule, select

log = logging.getLogger("conflictual")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".10g")


def _writer(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _write_csv(path: str | Path, columns: Sequence[str], rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow(format_row(row, columns))


def _emit(args, columns: Sequence[str], rows: list[list[str]]) -> None:
    fh, close = _writer(getattr(args, "out", None))
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


def _int_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("-")
    try:
        if sep:
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range like 2-6, got {text!r}") from None


def _rules(values: list[str] | None, default=CONFLICTUAL_RULES) -> list[Rule]:
    if not values:
        return list(default)
    out = []
    for value in values:
        for part in value.split(","):
            if part.strip().lower() == "all":
                out += ALL_RULES
            elif part.strip().lower() == "conflictual":
                out += CONFLICTUAL_RULES
            elif part.strip():
                out.append(Rule.parse(part))
    return out


def _axioms(values: list[str] | None) -> list[Axiom]:
    if not values:
        return list(Axiom)
    return [Axiom.parse(p) for v in values for p in v.split(",") if p.strip()]


def _generator_configs(args) -> list[GeneratorConfig]:
    if not args.generator:
        raise UsageError("--generator is required here")
    ns = args.n or [10]
    ms = args.m or [4]
    psi = args.psi[0] if args.psi else 0.5
    return [
        GeneratorConfig(
            args.generator, n, m, seed=args.seed, psi=psi, centers=args.centers,
            second_center=args.second_center, voter_dist=args.voter_dist, cand_dist=args.cand_dist,
        )
        for n, m in itertools.product(ns, ms)
    ]


def _policy(args) -> IngestPolicy:
    subset = None
    if args.subset:
        try:
            subset = tuple(int(c) - 1 for c in args.subset.split(","))
        except ValueError:
            raise UsageError("--subset takes 1-based candidate numbers, e.g. 1,3,4") from None
    return IngestPolicy(
        tie_break=args.tie_break, incomplete=args.incomplete,
        weight_scale=args.weight_scale, candidate_subset=subset,
    )


def load_profile(args) -> Profile:
    """Resolve the single profile a command works on."""
    sources = [bool(args.profile), bool(args.fixture), bool(args.preflib), bool(args.generator)]
    if sum(sources) != 1:
        raise UsageError("give exactly one of PROFILE, --fixture, --preflib or --generator")
    if args.profile:
        return read_profile(args.profile)
    if args.fixture:
        if args.fixture not in fx.FIXTURES:
            raise UsageError(f"unknown fixture {args.fixture!r}; choose from {', '.join(fx.FIXTURES)}")
        return fx.FIXTURES[args.fixture]()
    if args.preflib:
        return materialize(read_election(args.preflib), _policy(args), seed=args.seed)
    configs = _generator_configs(args)
    if len(configs) != 1:
        raise UsageError("give a single --n and --m to sample one profile")
    return generate(configs[0])


def _add_source(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("profile", nargs="?", help="native profile document")
    else:
        p.set_defaults(profile=None)
    p.add_argument("--fixture", help="built-in example profile (" + ", ".join(fx.FIXTURES) + ")")
    p.add_argument("--preflib", metavar="FILE", help="PrefLib-style election file")
    _add_generator(p)
    p.add_argument("--tie-break", choices=("random", "index"), default="random",
                   help="how ties in PrefLib rankings are broken (default: seeded random)")
    p.add_argument("--incomplete", choices=("drop", "error"), default="drop")
    p.add_argument("--weight-scale", type=int, default=1,
                   help="multiply rational weights by this and round to integers")
    p.add_argument("--subset", help="keep only these 1-based candidates, e.g. 1,2,5")


def _add_generator(p: argparse.ArgumentParser) -> None:
    p.add_argument("--generator", choices=KINDS)
    p.add_argument("--n", type=_int_range, help="voters (integer or range a-b)")
    p.add_argument("--m", type=_int_range, help="candidates (integer or range a-b)")
    p.add_argument("--psi", type=lambda s: [float(x) for x in s.split(",")],
                   help="Mallows dispersion; a comma list runs a sweep in `experiment`")
    p.add_argument("--centers", type=int, choices=(1, 2), default=1)
    p.add_argument("--second-center", choices=("reverse", "random"), default="reverse")
    p.add_argument("--voter-dist", choices=("uniform", "gaussian"), default="uniform")
    p.add_argument("--cand-dist", choices=("uniform", "gaussian"), default="uniform")
    p.add_argument("--seed", type=int, default=0)


def cmd_winners(args) -> int:
    profile = load_profile(args)
    rows = []
    for rule in _rules(args.rule):
        outcome = select(rule, profile)
        for pair in outcome.winners:
            rows.append([
                rule.name, pair.label(profile.names), _fmt(outcome.scores[pair]),
                str(len(outcome.winners)), str(outcome.no_conflict).lower(),
            ])
    _emit(args, ("rule", "pair", "score", "ties", "no_conflict"), rows)
    return EXIT_OK


def cmd_metrics(args) -> int:
    profile = load_profile(args)
    if args.pair:
        assessments = []
        for text in args.pair:
            names = [s.strip() for s in text.split(",")]
            if len(names) != 2:
                raise UsageError(f"--pair takes two candidate names, got {text!r}")
            assessments.append(assess_pair(profile, profile.pair(*names)))
    else:
        assessments = assess_all(profile)
    rows = [
        [a.pair.label(profile.names), _fmt(a.alpha), _fmt(a.beta), _fmt(a.gamma), _fmt(a.phi),
         str(a.conf_sum), str(a.conf_nash), str(a.swap_score)]
        for a in assessments
    ]
    _emit(args, ("pair", "alpha", "beta", "gamma", "phi", "conf_sum", "conf_nash", "swap_score"), rows)
    return EXIT_OK


def cmd_axioms(args) -> int:
    rules = _rules(args.rule)
    axioms = _axioms(args.axiom)
    witness_dir = Path(args.witness_dir)
    single = any([args.profile, args.fixture, args.preflib])
    profile = load_profile(args) if single else None
    configs = None if single else _generator_configs(args)
    rows, failed = [], False
    for rule in rules:
        for axiom in axioms:
            if profile is not None:
                report, trials = check_axiom(axiom, rule, profile), 1
                found = None if report.holds else (0, report)
            else:
                trials = args.trials
                found = search_counterexample(axiom, rule, configs, args.trials, args.seed)
            if found is None:
                rows.append([rule.name, axiom.value, "PASS", str(trials), "", ""])
                continue
            failed = True
            trial, report = found
            witness_dir.mkdir(parents=True, exist_ok=True)
            path = witness_dir / f"{axiom.value}__{rule.name}.profile"
            write_profile(report.witness.profile, path,
                          comment=f"{axiom.value} fails for {rule.name}: {report.witness.description}")
            rows.append([rule.name, axiom.value, "FAIL", str(trial + 1), str(path), report.witness.description])
    _emit(args, ("rule", "axiom", "verdict", "trials", "witness", "description"), rows)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_experiment(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    n = (args.n or [100])[0]
    m = (args.m or [10])[0]
    if args.psi and len(args.psi) > 1:
        if args.generator != "mallows":
            raise UsageError("a --psi list needs --generator mallows")
        base = GeneratorConfig("mallows", n, m, centers=args.centers, second_center=args.second_center)
        per_profile, summary = mallows_sweep(base, args.psi, profiles=args.trials, seed=args.seed)
        _write_csv(out / "profile_metrics.csv", PROFILE_COLUMNS, per_profile)
        _write_csv(out / "sweep.csv", SWEEP_COLUMNS, summary)
        print(f"wrote {out / 'sweep.csv'} and {out / 'profile_metrics.csv'}")
        return EXIT_OK
    if args.preflib:
        spec = ExperimentSpec(rules=tuple(_rules(args.rule)), dataset=read_election(args.preflib),
                              trials=args.trials, n=n, m=m, seed=args.seed)
    else:
        args.n, args.m = [n], [m]
        spec = ExperimentSpec(rules=tuple(_rules(args.rule)), generator=_generator_configs(args)[0],
                              trials=args.trials, n=n, m=m, seed=args.seed)
    result = run_experiment(spec)
    _write_csv(out / "winners.csv", WINNER_COLUMNS, result.winners)
    _write_csv(out / "summary.csv", SUMMARY_COLUMNS, result.summary())
    _write_csv(out / "random_pairs.csv", RANDOM_COLUMNS, result.random_pairs)
    written = ["winners.csv", "summary.csv", "random_pairs.csv"]
    if spec.euclidean:
        _write_csv(out / "positions.csv", POSITION_COLUMNS, result.positions)
        written.append("positions.csv")
    print("wrote " + ", ".join(str(out / w) for w in written))
    return EXIT_OK


def cmd_sample(args) -> int:
    configs = _generator_configs(args)
    if len(configs) != 1:
        raise UsageError("give a single --n and --m")
    text = dumps_profile(generate(configs[0]))
    fh, close = _writer(args.out)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_ingest(args) -> int:
    profile = materialize(read_election(args.file), _policy(args), seed=args.seed)
    fh, close = _writer(args.out)
    try:
        fh.write(dumps_profile(profile, comment=f"ingested from {args.file}"))
    finally:
        if close:
            fh.close()
    return EXIT_OK


def write_fixtures(out: str | Path) -> list[Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, make in fx.FIXTURES.items():
        path = out / f"{name}.profile"
        write_profile(make(), path, comment=(make.__doc__ or name).strip())
        paths.append(path)
    return paths


WINNERS_HELP = "CSV columns: rule,pair,score,ties,no_conflict (one row per winning pair)"
METRICS_HELP = "CSV columns: pair,alpha,beta,gamma,phi,conf_sum,conf_nash,swap_score"
AXIOMS_HELP = ("CSV columns: rule,axiom,verdict,trials,witness,description. Without a single profile, "
               "profiles are sampled from --generator with --n/--m ranges for --trials trials per cell. "
               "Witness profiles are written to --witness-dir.")
EXPERIMENT_HELP = (
    "Writes into --out: winners.csv (" + ",".join(WINNER_COLUMNS) + "), summary.csv ("
    + ",".join(SUMMARY_COLUMNS) + "), random_pairs.csv (" + ",".join(RANDOM_COLUMNS)
    + "), and for euclidean runs positions.csv (" + ",".join(POSITION_COLUMNS) + "). With a --psi list "
    "and --generator mallows: profile_metrics.csv (" + ",".join(PROFILE_COLUMNS) + ") and sweep.csv ("
    + ",".join(SWEEP_COLUMNS) + "), --trials profiles per psi."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflict-select",
        description="Select the most conflicting pair of candidates and audit the selection rules.",
    )
    parser.add_argument("--fixtures", action="store_true",
                        help="write every built-in example profile into --out (default: fixtures/)")
    parser.add_argument("--out", help="output file or directory")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("winners", help="winning pairs per rule", epilog=WINNERS_HELP)
    _add_source(p)
    p.add_argument("--rule", action="append", help="rule name(s), comma separated; 'all' for every rule")
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_winners)

    p = sub.add_parser("metrics", help="polarization metrics of pairs", epilog=METRICS_HELP)
    _add_source(p)
    p.add_argument("--pair", action="append", help="two candidate names, e.g. a,b (default: all pairs)")
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("axioms", help="check rules against axioms", epilog=AXIOMS_HELP)
    _add_source(p)
    p.add_argument("--rule", action="append")
    p.add_argument("--axiom", action="append", help=", ".join(a.value for a in Axiom))
    p.add_argument("--trials", type=int, default=1000, help="profiles sampled per rule/axiom cell")
    p.add_argument("--witness-dir", default="witnesses")
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("experiment", help="batch experiment writing CSV files", epilog=EXPERIMENT_HELP)
    _add_source(p, positional=False)
    p.add_argument("--rule", action="append")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sample", help="sample a profile and write it as a native document")
    _add_generator(p)
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ingest", help="convert a PrefLib-style file into a native profile document")
    p.add_argument("file")
    p.add_argument("--tie-break", choices=("random", "index"), default="random")
    p.add_argument("--incomplete", choices=("drop", "error"), default="drop")
    p.add_argument("--weight-scale", type=int, default=1)
    p.add_argument("--subset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.fixtures:
        for path in write_fixtures(args.out or "fixtures"):
            print(path)
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConflictualError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
