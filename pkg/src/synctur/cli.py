"""Command-line entry point: point evaluation, sweeps, certification and
figure-data presets.

Exit codes: 0 success, 1 invalid arguments, 2 quadrature non-convergence
in `point`, 3 certificate violation.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from .asymptotics import adiabatic_coefficients, diabatic_coefficients, tur_certificate
from .observables import sync_report, thermo_report, QuadratureConvergenceError
from .quadrature import QuadratureConfig
from .response import MachineParams, chi_imag_eigenvalues
from .sweep import SweepSpec, export, find_threshold_frequency, run_sweep

_PARAM_FLAGS = {
    "omega_b": "omega_b", "gamma1": "gamma1", "gamma2": "gamma2",
    "omega_c": "omega_c", "phi": "phi", "omega_drive": "omega_drive",
    "t1": "t1", "t2": "t2",
}

FIGURE_PRESETS = ("fig2a", "fig2b", "fig3", "fig4", "supfig1", "supfig3", "supfig4")


def _add_common(sub):
    g = sub.add_argument_group("machine parameters (defaults: strong-damping "
                               "small-cutoff working point)")
    g.add_argument("--omega-b", type=float, dest="omega_b")
    g.add_argument("--gamma1", type=float)
    g.add_argument("--gamma2", type=float)
    g.add_argument("--omega-c", type=float, dest="omega_c")
    g.add_argument("--phi", type=float)
    g.add_argument("--omega-drive", type=float, dest="omega_drive")
    g.add_argument("--t1", type=float)
    g.add_argument("--t2", type=float)
    g.add_argument("--tbar", type=float, help="mean temperature (with --dt-rel)")
    g.add_argument("--dt-rel", type=float, dest="dt_rel",
                   help="relative gradient (T1-T2)/Tbar")
    sub.add_argument("--config", help="flat key=value file; flags override it")
    sub.add_argument("--rel-tol", type=float, dest="rel_tol")
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--threads", type=int,
                     default=int(os.environ.get("SYNCTUR_THREADS", "1")))
    sub.add_argument("--seed", type=int, default=0)


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = float(v)
    return out


def _build_params(args) -> MachineParams:
    vals: dict = {}
    if getattr(args, "config", None):
        file_vals = _read_config_file(args.config)
        for k, v in file_vals.items():
            if k in _PARAM_FLAGS or k in ("tbar", "dt_rel"):
                vals[k] = v
            else:
                raise ValueError(f"unknown config key {k!r}")
    for k in list(_PARAM_FLAGS) + ["tbar", "dt_rel"]:
        v = getattr(args, k, None)
        if v is not None:
            vals[k] = v
    tbar = vals.pop("tbar", None)
    dt_rel = vals.pop("dt_rel", None)
    if tbar is not None:
        dt = (dt_rel or 0.0) * tbar
        vals["t1"] = tbar + 0.5 * dt
        vals["t2"] = tbar - 0.5 * dt
    return MachineParams(**vals)


def _cfg(args) -> QuadratureConfig:
    if getattr(args, "rel_tol", None):
        return QuadratureConfig(rel_tol=args.rel_tol)
    return QuadratureConfig()


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_point(args) -> int:
    p = _build_params(args)
    cfg = _cfg(args)
    try:
        rep = thermo_report(p, cfg, strict=True)
        sync = sync_report(p, cfg, strict=True)
    except QuadratureConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    obj = {
        "params": dataclasses.asdict(p),
        "thermo": {k: getattr(rep, k) for k in
                   ("P_A0", "P_B0", "dP_A", "dP_B", "P_A", "P_B", "P",
                    "J1", "J2", "S_dot", "D_PA", "D_PB", "D_P",
                    "Q_P", "Q_PA", "Q_PB", "eta")},
        "sync": {k: getattr(sync, k) for k in
                 ("var_AA", "var_BB", "cov_AB", "pearson_C", "pearson_tilde")},
        "eps_num": rep.eps_num,
    }
    _emit(json.dumps(obj, indent=1) + "\n", args.out)
    return 0


def _cmd_sweep(args) -> int:
    p = _build_params(args)
    cfg = _cfg(args)
    axis1 = (args.axis1, _parse_grid(args.grid1))
    axis2 = (args.axis2, _parse_grid(args.grid2)) if args.axis2 else None
    spec = SweepSpec(base=p, axis1=axis1, axis2=axis2,
                     quantities=tuple(args.quantities.split(",")),
                     cfg=cfg, dt_rel=args.dt_rel or 0.0, tbar=args.tbar)
    result = run_sweep(spec, threads=args.threads)
    if args.out:
        export(result, args.format, args.out)
    else:
        export(result, args.format, sys.stdout)
    return 0


def _parse_grid(text: str) -> list:
    """lo:hi:n[:log] or a comma list of values."""
    if ":" in text:
        parts = text.split(":")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        log = len(parts) > 3 and parts[3] == "log"
        if log:
            return list(np.geomspace(lo, hi, n))
        return list(np.linspace(lo, hi, n))
    return [float(v) for v in text.split(",")]


def _cmd_certify(args) -> int:
    p = _build_params(args)
    cfg = _cfg(args)
    rng = np.random.default_rng(args.seed)
    scale = 2.0 * max(p.omega_a, p.omega_b, p.omega_drive, p.omega_c,
                      p.t1, p.t2)
    pairs = rng.uniform(-scale, scale, size=(args.samples, 2))
    report = tur_certificate(p, pairs)
    rep = thermo_report(p, cfg, strict=False)
    lines = [f"pairs checked: {report.n_pairs}"]
    for name, margin in sorted(report.margins.items()):
        lines.append(f"margin {name}: {margin:.6e}")
    ok = report.passed
    if rep.Q_P is not None:
        lines.append(f"Q_P = {rep.Q_P:.12g} (eps_num = {rep.eps_num:.3e})")
        if rep.Q_P < 2.0 - rep.eps_num:
            ok = False
            lines.append("VIOLATION: Q_P < 2")
    if rep.S_dot < -rep.eps_num:
        ok = False
        lines.append(f"VIOLATION: S_dot = {rep.S_dot:.6e} < 0")
    for v in report.violations:
        lines.append(f"VIOLATION: {v}")
    lines.append("certificate: " + ("PASS" if ok else "FAIL"))
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 3


def _cmd_asymptotics(args) -> int:
    p = _build_params(args)
    cfg = _cfg(args)
    ad = adiabatic_coefficients(p, cfg)
    dia = diabatic_coefficients(p, cfg)
    obj = {"adiabatic": dataclasses.asdict(ad), "diabatic": dataclasses.asdict(dia)}
    _emit(json.dumps(obj, indent=1) + "\n", args.out)
    return 0


def _figure_spec(preset: str, p: MachineParams, cfg: QuadratureConfig,
                 n: int) -> SweepSpec:
    om_grid = list(np.geomspace(1e-2, 1e3, n))
    t_grid = list(np.geomspace(1e-2, 10.0, n))
    if preset == "fig3":
        return SweepSpec(base=p, axis1=("omega_drive", om_grid),
                         axis2=("t", t_grid),
                         quantities=("Q_PA", "P_A", "Q_P", "P", "S_dot"), cfg=cfg)
    if preset == "supfig1":
        return SweepSpec(base=p, axis1=("omega_drive", om_grid),
                         axis2=("t", t_grid),
                         quantities=("Q_PB", "P_B", "Q_P", "P", "S_dot"), cfg=cfg)
    if preset == "supfig3":
        return SweepSpec(base=p.replace(gamma2=0.01), axis1=("omega_drive", om_grid),
                         axis2=("t", t_grid),
                         quantities=("Q_PA", "P_A", "Q_P", "P", "S_dot"), cfg=cfg)
    if preset == "fig4":
        tbar_grid = list(np.geomspace(1e-2, 2.0, n))
        return SweepSpec(base=p, axis1=("omega_drive", om_grid),
                         axis2=("tbar", tbar_grid),
                         quantities=("Q_PA", "P_A", "Q_P", "P", "S_dot"),
                         cfg=cfg, dt_rel=1.8)
    if preset == "fig2b":
        t2_grid = list(np.geomspace(1e-2, 10.0, n))
        return SweepSpec(base=p, axis1=("gamma2", [0.01, 0.1, 1.0, 10.0, 100.0]),
                         axis2=("t2", t2_grid),
                         quantities=("pearson_C", "pearson_tilde"), cfg=cfg)
    raise ValueError(f"unknown preset {preset!r}")


def _cmd_figure_data(args) -> int:
    p = _build_params(args)
    cfg = QuadratureConfig(rel_tol=args.rel_tol or 1e-7)
    preset = args.preset
    if preset == "fig2a":
        # dominant eigenvalue of Im chi vs frequency, weak and strong damping
        lines = ["omega,gamma2,lambda_major,lambda_minor"]
        wgrid = np.linspace(1e-3, 2.0, args.grid_points)
        for g2 in (0.01, 100.0):
            lam_hi, lam_lo = chi_imag_eigenvalues(p.replace(gamma2=g2), wgrid)
            for w, hi, lo in zip(wgrid, lam_hi, lam_lo):
                lines.append(f"{w!r},{g2!r},{hi!r},{lo!r}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    if preset == "supfig4":
        # threshold frequency vs relative gradient for several Tbar
        lines = ["dt_rel,tbar,omega_th"]
        dt_grid = np.linspace(0.2, 1.8, 9)
        for tbar in (0.5, 1.0, 2.0):
            for dt in dt_grid:
                base = p.replace(t1=tbar * (1 + 0.5 * dt), t2=tbar * (1 - 0.5 * dt))
                th = find_threshold_frequency(base, (1e-2, 1e3), cfg, n_scan=32)
                lines.append(f"{dt!r},{tbar!r},{'' if th is None else repr(th)}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    spec = _figure_spec(preset, p, cfg, args.grid_points)
    result = run_sweep(spec, threads=args.threads)
    if args.out:
        export(result, args.format, args.out)
    else:
        export(result, args.format, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="synctur",
        description="Steady-state thermodynamics of two driven oscillators "
                    "in common baths: powers, fluctuations, TUR quantifiers "
                    "and synchronization measures.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("point", help="evaluate all observables at one point")
    _add_common(sp)
    sp.set_defaults(func=_cmd_point)

    sp = sub.add_parser("sweep", help="evaluate a 1-D or 2-D parameter grid")
    _add_common(sp)
    sp.add_argument("--axis1", required=True)
    sp.add_argument("--grid1", required=True, help="lo:hi:n[:log] or v1,v2,...")
    sp.add_argument("--axis2")
    sp.add_argument("--grid2")
    sp.add_argument("--quantities", default="P_A,P_B,P,J1,J2,S_dot,"
                    "D_PA,D_PB,D_P,Q_P,Q_PA,Q_PB,eta")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("certify", help="run the TUR-bound certificate")
    _add_common(sp)
    sp.add_argument("--samples", type=int, default=1000)
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("figure-data", help="emit preset sweep data as CSV")
    _add_common(sp)
    sp.add_argument("preset", choices=FIGURE_PRESETS)
    sp.add_argument("--grid-points", type=int, default=64, dest="grid_points")
    sp.set_defaults(func=_cmd_figure_data)

    sp = sub.add_parser("asymptotics", help="print slow/fast-drive coefficients")
    _add_common(sp)
    sp.set_defaults(func=_cmd_asymptotics)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
