"""Command-line surface.

Exit codes: 0 success, 2 usage error (argparse), 3 run blew up,
4 file I/O failure, 1 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path


EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BLOWUP = 3
EXIT_IO = 4


def _add_zk_profile(sub):
    p = sub.add_parser("zk-profile", help="solve a radial solitary profile and save it as CSV")
    p.add_argument("--c", type=float, required=True, help="wave speed (> 0)")
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--dr", type=float, default=1.0e-3)
    p.add_argument("--tol", type=float, default=1.0e-12)
    p.add_argument("--out", type=Path, required=True)


def _add_run(sub):
    p = sub.add_parser("run", help="run one configured simulation")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--emit-eta", action="store_true",
                   help="also snapshot the ramp-free stream function")


def _add_sweep(sub):
    p = sub.add_parser("sweep", help="re-run one initial state across shear values")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--f1", type=str, required=True, help="comma list of shear rates")
    p.add_argument("--t-end", type=float, default=None)


def _add_entropy(sub):
    p = sub.add_parser("entropy", help="spectral-entropy scan over stored snapshots")
    p.add_argument("--snapshots", type=Path, required=True, help="run output directory")
    p.add_argument("--slice", type=str, default="through-peak",
                   help="'through-peak' or 'y=<value>'")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default: <dir>/ce.csv)")


def _add_convergence(sub):
    sub.add_parser("convergence", help="measure stencil and integrator orders")


def _add_verify(sub):
    p = sub.add_parser("verify", help="run experiment presets and report verdicts")
    p.add_argument("--preset", type=str, default=None,
                   help="run a single named preset (default: the full gate)")
    p.add_argument("--out", type=Path, default=None, help="verdict CSV path")
    p.add_argument("--keep-outputs", action="store_true",
                   help="persist series/snapshots of the preset runs")


def _add_bench(sub):
    p = sub.add_parser("bench", help="compare numba and numpy kernel backends")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--nx", type=int, default=200)
    p.add_argument("--ny", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vortexlab",
                                     description="Shear-flow vortex simulation laboratory")
    sub = parser.add_subparsers(dest="command", required=True)
    for add in (_add_zk_profile, _add_run, _add_sweep, _add_entropy,
                _add_convergence, _add_verify, _add_bench):
        add(sub)
    return parser


def _cmd_zk_profile(args) -> int:
    from .zk import ShootingError, profile_to_table, solve_radial

    try:
        profile = solve_radial(args.c, args.r_max, args.dr, args.tol)
    except ShootingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    table = profile_to_table(profile)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("r,phi\n")
            for r, phi in table:
                fh.write(f"{r:.17g},{phi:.17g}\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote profile c={args.c} amplitude={profile.amplitude:.12g} to {args.out}")
    return EXIT_OK


def _load_config(path: Path):
    from .config import ConfigError, parse_config

    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO) from None
    try:
        return parse_config(text)
    except ConfigError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from None


def _cmd_run(args) -> int:
    from .driver import execute

    cfg = _load_config(args.config)
    try:
        out = execute(cfg, write_files=True, emit_eta=args.emit_eta)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if out.failure is not None:
        print(f"run blew up: {out.failure}", file=sys.stderr)
        return EXIT_BLOWUP
    last = out.records[-1]
    print(f"finished T={last.time:g} peak={last.peak_value:.6g} -> {out.out_dir}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from .config import with_updates
    from .driver import execute
    from .experiments import stable_dt
    from .timestep import IntegratorConfig
    from .wyf import ShearFlow
    from .zk import solve_radial

    cfg = _load_config(args.config)
    try:
        f1_values = [float(v) for v in args.f1.split(",") if v.strip()]
    except ValueError:
        print("error: --f1 expects a comma list of numbers", file=sys.stderr)
        return EXIT_USAGE
    if not f1_values:
        print("error: --f1 list is empty", file=sys.stderr)
        return EXIT_USAGE

    profiles = {c: solve_radial(c) for c in cfg.init.c_values if cfg.init.kind != "gaussian"}
    t_end = args.t_end if args.t_end is not None else cfg.integrator.t_end
    snap_t = cfg.integrator.snapshot_every * cfg.integrator.dt
    series_t = cfg.integrator.series_every * cfg.integrator.dt
    status = EXIT_OK
    for f1 in f1_values:
        shear = ShearFlow(cfg.shear.f0, f1)
        dt = stable_dt(cfg.grid, shear, cfg.integrator.dt)
        integ = IntegratorConfig(cfg.integrator.scheme, dt, t_end,
                                 max(int(round(snap_t / dt)), 1),
                                 max(int(round(series_t / dt)), 1))
        sub = with_updates(cfg, shear=shear, integrator=integ,
                           run_label=f"{cfg.run_label}/f1_{f1:g}")
        try:
            out = execute(sub, write_files=True, profiles=profiles)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        if out.failure is not None:
            print(f"f1={f1:g}: blew up: {out.failure}", file=sys.stderr)
            status = EXIT_BLOWUP
        else:
            print(f"f1={f1:g}: done, final peak {out.records[-1].peak_value:.6g}")
    return status


def _cmd_entropy(args) -> int:
    from .config import ConfigError, parse_config
    from .entropy import CESpec, ce_of_state
    from .snapshots import SnapshotFormatError, load_snapshot

    snap_dir = args.snapshots
    if not snap_dir.is_dir():
        print(f"error: {snap_dir} is not a directory", file=sys.stderr)
        return EXIT_IO
    if args.slice == "through-peak":
        spec = CESpec("through_peak")
    elif args.slice.startswith("y="):
        try:
            spec = CESpec("fixed_y", float(args.slice[2:]))
        except ValueError:
            print(f"error: bad --slice {args.slice!r}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(f"error: bad --slice {args.slice!r}", file=sys.stderr)
        return EXIT_USAGE

    f1 = float("nan")
    cfg_path = snap_dir / "config.txt"
    if cfg_path.exists():
        try:
            f1 = parse_config(cfg_path.read_text(encoding="utf-8")).shear.f1
        except (OSError, ConfigError):
            pass

    rows = []
    for path in sorted(snap_dir.glob("snap_*.snap")):
        try:
            field, header = load_snapshot(path)
        except (OSError, SnapshotFormatError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_IO
        rows.append((f1, header.time, ce_of_state(field, spec)))
    if not rows:
        print(f"error: no snapshots found in {snap_dir}", file=sys.stderr)
        return EXIT_IO
    rows.sort(key=lambda r: r[1])

    out_path = args.out if args.out is not None else snap_dir / "ce.csv"
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write("f1,T,ce\n")
            for f1v, t, ce in rows:
                fh.write(f"{f1v:.17g},{t:.17g},{ce:.17g}\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(rows)} entropy rows to {out_path}")
    return EXIT_OK


def _cmd_convergence(args) -> int:
    from .convergence import soliton_rhs_orders, stencil_orders, timestep_orders

    print("measured stencil orders (sine-wave refinement):")
    for name, order in stencil_orders().items():
        print(f"  {name:<10} {order:6.3f}")
    for name, order in soliton_rhs_orders().items():
        print(f"  {name:<18} {order:6.3f}")
    print(f"  rk4 self-convergence {timestep_orders(scheme='rk4'):6.3f}")
    print(f"  leapfrog self-convergence {timestep_orders(scheme='leapfrog'):6.3f}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .experiments import PRESET_NAMES, run_preset

    names = [args.preset] if args.preset else list(PRESET_NAMES)
    for name in names:
        if name not in PRESET_NAMES:
            print(f"error: unknown preset {name!r}; choose from {PRESET_NAMES}",
                  file=sys.stderr)
            return EXIT_USAGE
    all_verdicts = []
    for name in names:
        print(f"running preset {name} ...", flush=True)
        _, verdicts = run_preset(name, write_files=args.keep_outputs)
        all_verdicts.extend(verdicts)
        for v in verdicts:
            mark = "PASS" if v.passed else "FAIL"
            print(f"  [{mark}] {v.quantity}: expected {v.expected}, measured {v.measured}")
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["preset", "quantity", "expected", "measured", "pass"])
                for v in all_verdicts:
                    w.writerow([v.preset, v.quantity, v.expected, v.measured,
                                str(v.passed).lower()])
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if all(v.passed for v in all_verdicts) else EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    from .bench import compare_backends, format_report

    print(format_report(compare_backends(args.steps, args.nx, args.ny)))
    return EXIT_OK


_COMMANDS = {
    "zk-profile": _cmd_zk_profile,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "entropy": _cmd_entropy,
    "convergence": _cmd_convergence,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
