"""Empirical rule-by-axiom table over random small profiles.

Each cell is PASS if no violation turns up within the budget, otherwise the
trial index of the first witness. Witness profiles are written to --out.
"""

import argparse
from pathlib import Path

from conflictual.axioms import Axiom, search_counterexample
from conflictual.generators import GeneratorConfig
from conflictual.preflib import write_profile
from conflictual.rules import CONFLICTUAL_RULES


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=10_000)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--max-m", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs/witnesses")
    args = ap.parse_args()

    configs = [GeneratorConfig(kind, n, m, psi=0.5)
               for n in range(2, args.max_n + 1) for m in range(3, args.max_m + 1) for kind in ("ic", "mallows")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    print(f"{'axiom':<28}" + "".join(f"{r.name:>12}" for r in CONFLICTUAL_RULES))
    for axiom in Axiom:
        cells = []
        for rule in CONFLICTUAL_RULES:
            found = search_counterexample(axiom, rule, configs, args.budget, args.seed)
            if found is None:
                cells.append("PASS")
                continue
            trial, report = found
            write_profile(report.witness.profile, out / f"{axiom.value}__{rule.name}.profile",
                          comment=report.witness.description)
            cells.append(f"FAIL@{trial}")
        print(f"{axiom.value:<28}" + "".join(f"{c:>12}" for c in cells))


if __name__ == "__main__":
    main()
