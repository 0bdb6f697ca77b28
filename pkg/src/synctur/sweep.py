"""Parameter-grid evaluation engine, threshold finder and serialization.

A sweep evaluates the full observable set on a 1-D or 2-D grid of
parameter values (row-major, axis1 outer).  Rows are independent pure
evaluations, so the worker count never changes the output; per-row
quadrature failures are recorded in the row instead of aborting the run.

Axis names are MachineParams field names plus the derived axes:
  t       -> isothermal, sets t1 = t2 = value
  tbar    -> mean temperature, combined with the spec's dt_rel:
             t1 = tbar (1 + dt_rel/2), t2 = tbar (1 - dt_rel/2)
  dt_rel  -> relative gradient (T1-T2)/Tbar at fixed tbar
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .observables import SyncReport, ThermoReport, sync_report, thermo_report
from .quadrature import QuadratureConfig
from .response import MachineParams

__all__ = [
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "run_sweep",
    "find_threshold_frequency",
    "export",
    "load_json",
]

_PARAM_AXES = {"omega_a", "omega_b", "m", "gamma1", "gamma2", "omega_c",
               "phi", "omega_drive", "t1", "t2"}
_DERIVED_AXES = {"t", "tbar", "dt_rel"}

_THERMO_FIELDS = ("P_A0", "P_B0", "dP_A", "dP_B", "P_A", "P_B", "P",
                  "J1", "J2", "S_dot", "D_PA", "D_PB", "D_P",
                  "Q_P", "Q_PA", "Q_PB", "eta")
_SYNC_FIELDS = ("var_AA", "var_BB", "cov_AB", "pearson_C", "pearson_tilde")


@dataclass(frozen=True)
class SweepSpec:
    base: MachineParams
    axis1: tuple                      # (name, sequence of values)
    axis2: Optional[tuple] = None
    quantities: tuple = _THERMO_FIELDS
    cfg: QuadratureConfig = QuadratureConfig()
    dt_rel: float = 0.0               # used by the "tbar" axis
    tbar: Optional[float] = None      # used by the "dt_rel" axis

    def __post_init__(self):
        if not self.quantities:
            raise ValueError("no quantities selected")
        object.__setattr__(self, "quantities", tuple(self.quantities))
        for ax in (self.axis1, self.axis2):
            if ax is None:
                continue
            name, grid = ax
            if name not in _PARAM_AXES | _DERIVED_AXES:
                raise ValueError(f"unknown axis parameter {name!r}")
            grid = list(grid)
            if not grid:
                raise ValueError(f"axis {name!r} has an empty grid")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"axis {name!r} grid must be strictly increasing")
        unknown = set(self.quantities) - set(_THERMO_FIELDS) - set(_SYNC_FIELDS)
        if unknown:
            raise ValueError(f"unknown quantities {sorted(unknown)}")

    @property
    def needs_sync(self) -> bool:
        return any(q in _SYNC_FIELDS for q in self.quantities)

    def apply_axis(self, p: MachineParams, name: str, value: float) -> MachineParams:
        if name in _PARAM_AXES:
            return p.replace(**{name: value})
        if name == "t":
            return p.replace(t1=value, t2=value)
        if name == "tbar":
            dt = self.dt_rel * value
            return p.replace(t1=value + 0.5 * dt, t2=value - 0.5 * dt)
        if name == "dt_rel":
            tb = self.tbar if self.tbar is not None else 0.5 * (p.t1 + p.t2)
            dt = value * tb
            return p.replace(t1=tb + 0.5 * dt, t2=tb - 0.5 * dt)
        raise ValueError(name)

    def grid_params(self) -> list:
        """Row-major (axis1 outer) list of (axis values, MachineParams)."""
        n1, g1 = self.axis1
        rows = []
        for v1 in g1:
            p1 = self.apply_axis(self.base, n1, v1)
            if self.axis2 is None:
                rows.append(((v1,), p1))
            else:
                n2, g2 = self.axis2
                for v2 in g2:
                    rows.append(((v1, v2), self.apply_axis(p1, n2, v2)))
        return rows


@dataclass(frozen=True)
class SweepRow:
    axis_values: tuple
    thermo: ThermoReport
    sync: Optional[SyncReport]
    converged: bool

    def quantity(self, name: str):
        if name in _THERMO_FIELDS:
            return getattr(self.thermo, name)
        if self.sync is None:
            return None
        return getattr(self.sync, name)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: list

    @property
    def axis_names(self) -> tuple:
        names = (self.spec.axis1[0],)
        if self.spec.axis2 is not None:
            names += (self.spec.axis2[0],)
        return names


def _eval_row(args) -> SweepRow:
    axis_values, p, cfg, needs_sync = args
    thermo = thermo_report(p, cfg, strict=False)
    sync = sync_report(p, cfg, strict=False) if needs_sync else None
    converged = thermo.all_converged and (sync is None or sync.all_converged)
    return SweepRow(axis_values=axis_values, thermo=thermo, sync=sync,
                    converged=converged)


def run_sweep(spec: SweepSpec, threads: int | None = None) -> SweepResult:
    """Evaluate the grid; output is independent of the worker count."""
    if threads is None:
        threads = int(os.environ.get("SYNCTUR_THREADS", "1"))
    tasks = [(av, p, spec.cfg, spec.needs_sync) for av, p in spec.grid_params()]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_eval_row, tasks,
                                 chunksize=max(1, len(tasks) // (8 * threads))))
    else:
        rows = [_eval_row(t) for t in tasks]
    return SweepResult(spec=spec, rows=rows)


def find_threshold_frequency(base: MachineParams, omega_range: tuple,
                             cfg: QuadratureConfig = QuadratureConfig(),
                             n_scan: int = 64) -> Optional[float]:
    """Lowest drive frequency above which Q_PA stays < 2 up to the range end.

    Coarse log-spaced scan followed by bisection to relative width 1e-3.
    Undefined Q_PA (P_A crossing zero) counts as "not violated"; returns
    None when no such threshold exists inside the range.
    """
    lo, hi = omega_range
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")

    def violated(om: float) -> bool:
        q = thermo_report(base.replace(omega_drive=om), cfg, strict=False).Q_PA
        return q is not None and q < 2.0

    grid = [lo * (hi / lo) ** (i / (n_scan - 1)) for i in range(n_scan)]
    flags = [violated(om) for om in grid]
    # lowest index from which the violation persists through the range end
    start = None
    for i in range(n_scan - 1, -1, -1):
        if flags[i]:
            start = i
        else:
            break
    if start is None or start == 0:
        return grid[0] if start == 0 else None
    a, b = grid[start - 1], grid[start]
    while (b - a) / b > 1e-3:
        mid = math.sqrt(a * b)
        if violated(mid):
            b = mid
        else:
            a = mid
    return b


def _fmt(v) -> str:
    if v is None:
        return ""
    return repr(float(v))


def _csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(result.axis_names) + list(result.spec.quantities) + ["converged"]
    writer.writerow(header)
    for row in result.rows:
        rec = [_fmt(v) for v in row.axis_values]
        rec += [_fmt(row.quantity(q)) for q in result.spec.quantities]
        rec.append("true" if row.converged else "false")
        writer.writerow(rec)
    return buf.getvalue()


def _json_obj(result: SweepResult) -> dict:
    spec = result.spec
    obj = {
        "spec": {
            "base": dataclasses.asdict(spec.base),
            "axis1": [spec.axis1[0], list(map(float, spec.axis1[1]))],
            "axis2": None if spec.axis2 is None
            else [spec.axis2[0], list(map(float, spec.axis2[1]))],
            "quantities": list(spec.quantities),
            "dt_rel": spec.dt_rel,
            "rel_tol": spec.cfg.rel_tol,
        },
        "rows": [
            {
                "axis": list(map(float, row.axis_values)),
                "converged": row.converged,
                **{q: (None if row.quantity(q) is None else float(row.quantity(q)))
                   for q in spec.quantities},
            }
            for row in result.rows
        ],
    }
    return obj


def export(result: SweepResult, fmt: str, destination) -> None:
    """Write the sweep as CSV or JSON (see _csv_text for the CSV schema)."""
    if fmt == "csv":
        text = _csv_text(result)
    elif fmt == "json":
        text = json.dumps(_json_obj(result), indent=1)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        if hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {destination}: {exc}") from exc


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
