"""Where in the plane do the selected pairs sit?

Runs every rule on 2D Euclidean profiles and prints, per rule, the mean
distance of the winners from (0.5, 0.5) and their mean metrics. The
per-trial rows land in --out for plotting.
"""

import argparse
import csv
from pathlib import Path

from conflictual.experiments import (
    POSITION_COLUMNS,
    RANDOM_COLUMNS,
    WINNER_COLUMNS,
    ExperimentSpec,
    format_row,
    mean_by_rule,
    run_experiment,
)
from conflictual.generators import GeneratorConfig
from conflictual.rules import ALL_RULES


def write(path, columns, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        w.writerows(format_row(r, columns) for r in rows)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--voters", choices=("uniform", "gaussian"), default="gaussian")
    ap.add_argument("--candidates", choices=("uniform", "gaussian"), default="gaussian")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--m", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs/euclidean")
    args = ap.parse_args()

    gen = GeneratorConfig("euclidean", args.n, args.m, voter_dist=args.voters, cand_dist=args.candidates)
    spec = ExperimentSpec(rules=ALL_RULES, generator=gen, trials=args.trials, n=args.n, m=args.m, seed=args.seed)
    res = run_experiment(spec)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "winners.csv", WINNER_COLUMNS, res.winners)
    write(out / "positions.csv", POSITION_COLUMNS, res.positions)
    write(out / "random_pairs.csv", RANDOM_COLUMNS, res.random_pairs)

    dist = mean_by_rule(res.positions, "center_distance")
    metrics = {k: mean_by_rule(res.winners, k) for k in ("alpha", "beta", "gamma", "phi")}
    print(f"{'rule':<12}{'dist':>8}{'alpha':>8}{'beta':>8}{'gamma':>8}{'phi':>8}")
    for rule in dist:
        print(f"{rule:<12}{dist[rule]:8.3f}" + "".join(f"{metrics[k][rule]:8.3f}" for k in metrics))


if __name__ == "__main__":
    main()
