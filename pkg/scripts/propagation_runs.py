"""Direct propagation of the exact modes: 1D stable/unstable pair and the 2D pair.

Uses the JSON configs in scripts/configs and the `ptsol propagate` command;
each run directory gets diagnostics.csv, field snapshots and intensity.svg.
"""

import argparse
import os

from ptsol import cli

HERE = os.path.dirname(os.path.abspath(__file__))
RUNS = ["baseline_1d", "unstable_1d", "stable_2d", "unstable_2d"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("runs", nargs="*", default=RUNS)
    ap.add_argument("--out", default="results/propagation")
    ap.add_argument("--perturb", type=float, default=None)
    args = ap.parse_args()
    for name in args.runs:
        argv = ["propagate", os.path.join(HERE, "configs", f"{name}.json"), os.path.join(args.out, name)]
        if args.perturb is not None:
            argv += ["--perturb", str(args.perturb)]
        print(f"-- {name}")
        code = cli.main(argv)
        print(f"   exit {code}")


if __name__ == "__main__":
    main()
