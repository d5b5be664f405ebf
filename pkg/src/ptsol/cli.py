"""Command-line front end: verify, spectrum, threshold, propagate, curve.

Exit codes: 0 ok, 1 config/schema, 2 sign condition, 3 boundary leak,
4 eigensolver or numerics, 5 bracket, 6 blow-up.
"""

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import analytic, figures, store
from .config import load_config
from .dynamics import PropagationConfig, propagate
from .errors import BlowUp, BracketInvalid, PTSolError
from .linstab import classify, compute_spectrum, find_threshold, threshold_curve

log = logging.getLogger("ptsol")

VERIFY_LIMIT = 1e-9
EXIT_NUMERICS = 4


def _mode(cfg):
    return analytic.exact_mode(cfg.dimension, cfg.m, cfg.sigma, cfg.a, cfg.V1, cfg.W0)


def _echo(sol, spec):
    pot = spec.potential
    out = {"phi0": sol.phi0, "beta": sol.beta, "V0": pot.V0, "phase_coeff": sol.phase_coeff}
    if sol.dimension == 1:
        out["V2"] = analytic.phase_potential(sol.m, sol.a, sol.W0)
    else:
        out["V2"] = pot.V2
    return out


def cmd_verify(args):
    cfg = load_config(args.config)
    sol, spec = _mode(cfg)
    grid = cfg.build_grid()
    u = analytic.sample(sol, grid)
    res = analytic.residual_stationary(spec, u, sol.beta, grid)
    if sol.dimension == 1:
        s0 = float(analytic.flow_density_1d(sol, 0.0))
    else:
        s0 = float(analytic.flow_density_2d(sol, 0.0, 0.0)[0])
    report = dict(_echo(sol, spec), residual=res, power=analytic.power(sol), flow_at_origin=s0,
                  passed=res <= VERIFY_LIMIT)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if res <= VERIFY_LIMIT else EXIT_NUMERICS


def cmd_spectrum(args):
    cfg = load_config(args.config)
    sol, spec = _mode(cfg)
    grid = cfg.build_grid()
    sp = compute_spectrum(spec, sol, grid, form=args.form or cfg.form, tolerance=cfg.tolerance)
    verdict = classify(sp, cfg.tolerance)
    order = np.lexsort((sp.eigenvalues.imag, sp.eigenvalues.real))
    w = sp.eigenvalues[order]
    store.write_csv(args.out, store.SPECTRUM_HEADER, zip(w.real, w.imag))
    if args.svg:
        title = f"m={cfg.m}, W0={cfg.W0:g}: {'stable' if verdict.stable else 'unstable'}"
        figures.save(args.svg, figures.spectrum_svg(w, title, cfg.tolerance))
    print(f"max Re delta = {verdict.max_growth:.6e}")
    if len(sp.unresolved):
        print(f"excluded {len(sp.unresolved)} grid-scale eigenvalue(s); raw max Re = {sp.raw_max_growth:.6e}")
    print("verdict:", "stable" if verdict.stable else "unstable")
    return 0


def cmd_threshold(args):
    cfg = load_config(args.config)
    lo = cfg.sweep.w0_min if args.w0_min is None else args.w0_min
    hi = cfg.sweep.w0_max if args.w0_max is None else args.w0_max
    tol = cfg.sweep.tol if args.tol is None else args.tol
    r = find_threshold(cfg.m, cfg.sigma, cfg.a, cfg.V1, cfg.dimension, lo, hi, tol,
                       grid=cfg.build_grid(), form=cfg.form, tolerance=cfg.tolerance)
    outdir = args.outdir or cfg.output_dir
    store.write_json(os.path.join(outdir, f"threshold_m{cfg.m}.json"), {
        "m": r.m, "sigma": r.sigma, "w0_threshold": r.threshold, "bracket": list(r.bracket),
        "tol": r.tol, "form": r.form, "a": r.a, "V1": r.V1, "dimension": r.dimension,
        "probes": r.probes,
    })
    store.append_csv(os.path.join(outdir, "thresholds.csv"), store.THRESHOLDS_HEADER,
                     [(r.m, r.sigma, r.threshold, r.bracket[0], r.bracket[1], r.tol)])
    print(f"m={r.m}: |W0*| = {r.threshold:.4f} in [{r.bracket[0]:.4f}, {r.bracket[1]:.4f}]")
    return 0


def _write_propagation(outdir, grid, rec, title, file_z):
    z, pw, pk, dv = rec.arrays()
    store.write_csv(os.path.join(outdir, "diagnostics.csv"), store.DIAGNOSTICS_HEADER, zip(z, pw, pk, dv))
    names = []
    for zz, u in zip(rec.snapshot_z, rec.snapshots):
        if zz not in file_z:
            continue
        stem = os.path.join(outdir, f"field_{len(names):03d}")
        store.write_snapshot(stem, u, grid, zz)
        names.append(os.path.basename(stem))
    if not rec.snapshots:
        return names
    if grid.ndim == 1:
        rows = [np.abs(u) ** 2 for u in rec.snapshots]
        svg = figures.heatmap_xz_svg(grid.x, rec.snapshot_z, rows, title)
    else:
        frames = [np.abs(u) ** 2 for u in rec.snapshots]
        svg = figures.panels_xy_svg(grid.gx.x, grid.gy.x, frames, rec.snapshot_z, title)
    figures.save(os.path.join(outdir, "intensity.svg"), svg)
    return names


def cmd_propagate(args):
    cfg = load_config(args.config)
    sol, spec = _mode(cfg)
    grid = cfg.build_grid()
    p = cfg.propagation
    perturb = p.perturb if args.perturb is None else args.perturb
    seed = p.seed if args.seed is None else args.seed
    marks = tuple(p.z_end * k / 4 for k in range(5)) if p.z_end > 0 else (0.0,)
    pc = PropagationConfig(z_end=p.z_end, dz=p.dz, save_every=p.save_every, perturb_amplitude=perturb,
                           seed=seed, keep_snapshots=cfg.dimension == 1,
                           snapshot_z=marks if cfg.dimension == 2 else ())
    outdir = args.outdir or cfg.output_dir
    title = f"m={cfg.m}, W0={cfg.W0:g}"
    code = 0
    blowup_z = None
    try:
        rec = propagate(spec, analytic.sample(sol, grid), grid, pc)
    except BlowUp as exc:
        rec = exc.record
        blowup_z = exc.z
        print(f"blow-up at z = {exc.z:g}", file=sys.stderr)
        code = 6
    file_z = _nearest(rec.snapshot_z, marks) if cfg.dimension == 1 else set(rec.snapshot_z)
    _write_propagation(outdir, grid, rec, title, file_z)
    store.write_json(os.path.join(outdir, "run.json"), dict(
        _echo(sol, spec), m=cfg.m, sigma=cfg.sigma, a=cfg.a, V1=cfg.V1, W0=cfg.W0,
        z_end=p.z_end, dz=p.dz, perturb=perturb, seed=seed, blowup_z=blowup_z,
        final_deviation=rec.deviation[-1] if rec.deviation else None,
    ))
    if rec.deviation:
        print(f"final deviation = {rec.deviation[-1]:.4e}, power drift = "
              f"{abs(rec.power[-1] - rec.power[0]) / rec.power[0]:.4e}")
    return code


def _nearest(zs, marks):
    zs = list(zs)
    if not zs:
        return set()
    return {min(zs, key=lambda z: abs(z - t)) for t in marks}


def cmd_curve(args):
    cfg = load_config(args.config)
    ms = [int(v) for v in args.m_list.split(",")] if args.m_list else list(cfg.sweep.m_list)
    results = threshold_curve(ms, jobs=args.jobs, sigma=cfg.sigma, a=cfg.a, V1=cfg.V1,
                              dimension=cfg.dimension, lo=cfg.sweep.w0_min, hi=cfg.sweep.w0_max,
                              tol=cfg.sweep.tol, grid=cfg.build_grid(), form=cfg.form,
                              tolerance=cfg.tolerance)
    values = [r.threshold if r is not None else math.nan for r in results]
    outdir = args.outdir or cfg.output_dir
    store.write_csv(os.path.join(outdir, "curve.csv"), store.CURVE_HEADER, zip(ms, values))
    figures.save(os.path.join(outdir, "curve.svg"), figures.curve_svg(ms, values, "stability region"))
    for m, v in zip(ms, values):
        print(f"m={m}: {v:.4f}" if math.isfinite(v) else f"m={m}: failed")
    if not any(math.isfinite(v) for v in values):
        raise BracketInvalid("no order produced a threshold")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="ptsol", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the closed-form mode against the stationary equation")
    p.add_argument("config")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="linear-stability eigenvalues")
    p.add_argument("config")
    p.add_argument("out", help="CSV path (columns re,im)")
    p.add_argument("--svg")
    p.add_argument("--form", choices=("published", "literal", "consistent"))
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("threshold", help="bisect for the stability threshold in W0")
    p.add_argument("config")
    p.add_argument("--w0-min", type=float)
    p.add_argument("--w0-max", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("propagate", help="split-step propagation of the exact mode")
    p.add_argument("config")
    p.add_argument("outdir", nargs="?")
    p.add_argument("--perturb", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("curve", help="threshold against nonlinearity order")
    p.add_argument("config")
    p.add_argument("--m-list")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $PTSOL_JOBS or 1)")
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_curve)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PTSolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
