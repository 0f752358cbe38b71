"""Sweep orchestration: q-grid evaluation, CSV serialization, stability-border
location and figure-level crossing refinement.

Rows are evaluated in a thread pool (the compiled kernel releases the GIL)
capped by the FLOQUET_THREADS environment variable, and always emitted in
q-order, so identical configurations produce byte-identical CSV output.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .bath import BathModel, bath_from_config
from .errors import ConfigError, NoCrossing, QuasithermError
from .hill import DEFAULT_SAMPLES, DEFAULT_TOL, SpringParams, integrate_basis
from .modes import solve_mode
from .thermo import QuasiSteadyState, steady_state

CSV_HEADER = ("q", "nu_over_omega", "stable", "r", "inv_quasitemp",
              "p0_over_P0", "R1_over_R0", "R2_over_R0", "R_over_R0",
              "flags", "error")

ALL_OUTPUTS = ("nu", "r", "inv_quasitemp", "p0_ratio", "dissipation")
THERMO_OUTPUTS = frozenset(ALL_OUTPUTS) - {"nu"}

#: crossings are refined by bisection down to this q-resolution
CROSSING_RESOLUTION = 1e-4


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a fixed, a q-grid, a bath, and the requested outputs."""

    a: float
    q_start: float
    q_end: float
    q_step: float
    bath: BathModel | None = None
    outputs: tuple[str, ...] = ALL_OUTPUTS
    n_samples: int = DEFAULT_SAMPLES
    oracle_checks: bool = False

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ConfigError(f"a must be positive (got {self.a})")
        if self.q_start < 0.0:
            raise ConfigError(f"q_start must be >= 0 (got {self.q_start})")
        if self.q_start > self.q_end:
            raise ConfigError(f"q_start {self.q_start} > q_end {self.q_end}")
        if not (self.q_step > 0.0):
            raise ConfigError(f"q_step must be positive (got {self.q_step})")
        unknown = set(self.outputs) - set(ALL_OUTPUTS)
        if unknown:
            raise ConfigError(f"unknown outputs: {sorted(unknown)}")
        if THERMO_OUTPUTS & set(self.outputs) and self.bath is None:
            raise ConfigError("thermo outputs requested but no bath configured")
        if self.n_samples < 256 or self.n_samples & (self.n_samples - 1):
            raise ConfigError(f"n_samples must be a power of two >= 256 "
                              f"(got {self.n_samples})")

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {"a", "q_start", "q_end", "q_step", "bath", "outputs",
                 "n_samples", "oracle_checks"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            kwargs = {
                "a": float(raw["a"]),
                "q_start": float(raw["q_start"]),
                "q_end": float(raw["q_end"]),
                "q_step": float(raw["q_step"]),
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"missing or malformed sweep range: {exc}") from exc
        if "bath" in raw and raw["bath"] is not None:
            kwargs["bath"] = bath_from_config(raw["bath"])
        if "outputs" in raw:
            if not isinstance(raw["outputs"], (list, tuple)):
                raise ConfigError("outputs must be a list")
            kwargs["outputs"] = tuple(raw["outputs"])
        if "n_samples" in raw:
            try:
                kwargs["n_samples"] = int(raw["n_samples"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad n_samples: {exc}") from exc
        if "oracle_checks" in raw:
            kwargs["oracle_checks"] = bool(raw["oracle_checks"])
        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def q_grid(self) -> np.ndarray:
        count = int(math.floor((self.q_end - self.q_start) / self.q_step + 1e-9)) + 1
        return self.q_start + self.q_step * np.arange(count)


@dataclass
class SweepRow:
    q: float
    nu: float | None = None
    stable: bool | None = None
    state: QuasiSteadyState | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)
    error: str | None = None


def _workers() -> int:
    limit = os.environ.get("FLOQUET_THREADS")
    available = os.cpu_count() or 1
    if limit is not None:
        try:
            return max(1, min(available, int(limit)))
        except ValueError as exc:
            raise ConfigError(f"FLOQUET_THREADS={limit!r} is not an integer") from exc
    # only the compiled kernel releases the GIL during integration; threads
    # are pure contention for the scipy fallback
    if kernel.active() != "compiled":
        return 1
    return available


def evaluate_point(config: SweepConfig, q: float) -> SweepRow:
    """Evaluate one q grid point; errors land in the row, never propagate."""
    row = SweepRow(q=q)
    want_thermo = bool(THERMO_OUTPUTS & set(config.outputs))
    try:
        params = SpringParams(config.a, q)
        monodromy = integrate_basis(params)
        if monodromy.near_border:
            row.flags += ("near_border",)
        row.stable = monodromy.stable
        if not monodromy.stable:
            row.flags += (monodromy.classification.value,)
            return row
        _, traj, mode = solve_mode(params, n_samples=config.n_samples,
                                   monodromy=monodromy)
        row.nu = mode.nu
        if config.oracle_checks:
            defect = abs(cmath.exp(1j * mode.nu * traj.period) - traj.multiplier)
            if defect > 1e-8:
                row.error = f"oracle: multiplier defect {defect:.3e} > 1e-8"
        if want_thermo:
            row.state = steady_state(mode, config.bath, config.a)
            row.flags += row.state.flags
    except QuasithermError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate every grid point; one row per q, in q-order."""
    grid = config.q_grid()
    workers = _workers()
    if workers == 1 or grid.size == 1:
        return [evaluate_point(config, float(q)) for q in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda q: evaluate_point(config, float(q)), grid))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{value:.12g}"


def rows_to_csv(rows: list[SweepRow], config: SweepConfig) -> str:
    """Serialize sweep rows with the fixed schema, 12 significant digits."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    wants = set(config.outputs)
    for row in rows:
        state = row.state
        record = [
            _fmt(row.q),
            _fmt(row.nu if "nu" in wants else None),
            _fmt(row.stable),
            _fmt(state.r if state and "r" in wants else None),
            _fmt(state.inv_quasitemp if state and "inv_quasitemp" in wants else None),
            _fmt(state.p0_ratio if state and "p0_ratio" in wants else None),
            _fmt(state.r1_scaled if state and "dissipation" in wants else None),
            _fmt(state.r2_scaled if state and "dissipation" in wants else None),
            _fmt(state.r_scaled if state and "dissipation" in wants else None),
            ";".join(row.flags),
            row.error or "",
        ]
        writer.writerow(record)
    return out.getvalue()


def locate_borders(a: float, q_start: float, q_end: float,
                   q_step: float = 0.01, tol: float = DEFAULT_TOL) -> list[float]:
    """Mechanical stability borders in [q_start, q_end], bisection-refined.

    Scans the trace of the one-period matrix on the grid and refines every
    stability flip down to machine-level q-resolution.
    """
    def margin(q: float) -> float:
        return 2.0 - abs(integrate_basis(SpringParams(a, q), tol).trace)

    count = int(math.floor((q_end - q_start) / q_step + 1e-9)) + 1
    grid = q_start + q_step * np.arange(count)
    values = [margin(float(q)) for q in grid]
    borders = []
    for i in range(count - 1):
        lo, hi, flo = float(grid[i]), float(grid[i + 1]), values[i]
        if (flo > 0.0) == (values[i + 1] > 0.0):
            continue
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = margin(mid)
            if (fmid > 0.0) == (flo > 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        borders.append(0.5 * (lo + hi))
    return borders


def _target_value(config: SweepConfig, q: float, target: str) -> float | None:
    row = evaluate_point(config, q)
    if row.error or not row.stable or row.state is None:
        return None
    if target == "r1":
        return row.state.r
    return row.state.inv_quasitemp


def locate_crossings(config: SweepConfig, target: str) -> list[float]:
    """q values where r (target 'r1') or the scaled inverse quasitemperature
    (target 'tau1') crosses 1, refined to the 1e-4 q-resolution."""
    if target not in ("r1", "tau1"):
        raise ConfigError(f"unknown crossing target {target!r}")
    needed = "r" if target == "r1" else "inv_quasitemp"
    if needed not in config.outputs or config.bath is None:
        raise ConfigError(f"target {target!r} requires the {needed!r} output "
                          "and a bath")
    grid = config.q_grid()
    values = [_target_value(config, float(q), target) for q in grid]
    crossings = []
    for i in range(grid.size - 1):
        flo, fhi = values[i], values[i + 1]
        if flo is None or fhi is None:
            continue
        if (flo - 1.0) * (fhi - 1.0) >= 0.0:
            continue
        lo, hi = float(grid[i]), float(grid[i + 1])
        while hi - lo > CROSSING_RESOLUTION:
            mid = 0.5 * (lo + hi)
            fmid = _target_value(config, mid, target)
            if fmid is None:
                break
            if (fmid - 1.0) * (flo - 1.0) > 0.0:
                lo, flo = mid, fmid
            else:
                hi = mid
        crossings.append(0.5 * (lo + hi))
    if not crossings:
        raise NoCrossing(f"{target} never bracketed on the grid")
    return crossings
