"""Stability spectra for the stable/unstable 1D pair (m=2) and the self-focusing cases.

Writes CSV and SVG per case into results/spectra/ through the `ptsol spectrum` command.
"""

import argparse
import json
import os
import tempfile

from ptsol import cli

CASES = {
    "m2_w0.2": dict(m=2, sigma=-1, V1=3.0, W0=0.2),
    "m2_w0.5": dict(m=2, sigma=-1, V1=3.0, W0=0.5),
    "focusing_m1": dict(m=1, sigma=1, V1=-3.0, W0=0.001),
    "focusing_m2": dict(m=2, sigma=1, V1=-3.0, W0=0.001),
    "focusing_m3": dict(m=3, sigma=1, V1=-3.0, W0=0.001),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--form", default="published", choices=("published", "literal", "consistent"))
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--out", default="results/spectra")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, c in CASES.items():
        cfg = {"dimension": 1, "m": c["m"], "sigma": c["sigma"],
               "potential": {"a": 0.5, "V1": c["V1"], "W0": c["W0"]},
               "grid": {"xmin": -20.0, "xmax": 20.0, "n": args.n},
               "stability": {"form": args.form}}
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(cfg, fh)
        stem = os.path.join(args.out, f"{name}_{args.form}")
        print(f"-- {name}")
        cli.main(["spectrum", fh.name, stem + ".csv", "--svg", stem + ".svg"])
        os.unlink(fh.name)


if __name__ == "__main__":
    main()
