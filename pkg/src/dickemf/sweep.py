"""Deterministic parameter sweeps with CSV/JSON serialization.

A sweep is a cartesian grid over any of {gamma, omega_a, j} (the rest
fixed) evaluated by one of four tasks.  Grid points are independent, so
execution may fan out over worker processes; rows are always reassembled
in grid order and floats are rendered with 17 significant digits, which
makes output byte-identical across runs and across worker counts.

Row layouts (CSV column order == JSON key order):

  MeanFieldAnalytic / MeanFieldFiniteJ:
    omega_a, gamma, j, n_atoms, method, phase, rho_a, phi_a, rho_b,
    phi_b, energy, energy_per_atom, photons_per_atom, excited_fraction
  ExactCompare: the above observables for both mean-field paths plus
    exact values, per-atom gaps, cutoff metadata and an error column
    (a failed diagonalization flags the row instead of aborting).
  SeriesConvergence: j, rho_over_sqrt2j, F, F_limit, abs_dev with
    `grid_points` rows per j value.
"""

import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .exact import ConvergenceError, converge_cutoff
from .series import f_limit, f_series, two_j_int
from .solver import MinimizerOptions, analytic_minimum, numeric_minimum
from .surface import ModelParams

TASK_MF_ANALYTIC = "MeanFieldAnalytic"
TASK_MF_FINITE_J = "MeanFieldFiniteJ"
TASK_EXACT_COMPARE = "ExactCompare"
TASK_SERIES = "SeriesConvergence"
TASKS = (TASK_MF_ANALYTIC, TASK_MF_FINITE_J, TASK_EXACT_COMPARE, TASK_SERIES)

AXIS_NAMES = ("gamma", "omega_a", "j")
FORMATS = ("csv", "json")

_MF_COLUMNS = (
    "omega_a", "gamma", "j", "n_atoms", "method", "phase",
    "rho_a", "phi_a", "rho_b", "phi_b",
    "energy", "energy_per_atom", "photons_per_atom", "excited_fraction",
)

COLUMNS = {
    TASK_MF_ANALYTIC: _MF_COLUMNS,
    TASK_MF_FINITE_J: _MF_COLUMNS,
    TASK_EXACT_COMPARE: (
        "omega_a", "gamma", "j", "n_atoms",
        "e_exact_per_atom", "e_mf_analytic_per_atom", "e_mf_numeric_per_atom",
        "gap_analytic_per_atom", "gap_numeric_per_atom",
        "photons_per_atom_exact", "photons_per_atom_mf",
        "jz_per_j_exact", "jz_per_j_mf",
        "n_max_used", "cutoff_gap", "variational_bound_ok", "error",
    ),
    TASK_SERIES: ("j", "rho_over_sqrt2j", "F", "F_limit", "abs_dev"),
}


@dataclass(frozen=True)
class Axis:
    """One swept parameter: uniform (or log-uniform) grid of `count` values."""

    name: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        if int(self.count) < 1:
            raise ValueError(f"axis count must be >= 1, got {self.count!r}")
        if not (float(self.start) <= float(self.stop)):
            raise ValueError(f"axis needs start <= stop, got {self.start}..{self.stop}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and float(self.start) <= 0.0:
            raise ValueError("log spacing requires start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, int(self.count))
        return np.linspace(self.start, self.stop, int(self.count))


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: task, axes, fixed parameters, output, workers."""

    task: str
    axes: tuple[Axis, ...] = ()
    fixed: dict = field(default_factory=dict)
    output_format: str = "csv"
    workers: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}; expected one of {TASKS}")
        object.__setattr__(self, "axes", tuple(self.axes))
        names = [axis.name for axis in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate axis names in {names}")
        unknown = set(self.fixed) - set(AXIS_NAMES)
        if unknown:
            raise ValueError(f"unknown fixed parameters {sorted(unknown)}")
        overlap = set(self.fixed) & set(names)
        if overlap:
            raise ValueError(f"parameters {sorted(overlap)} are both fixed and swept")
        required = {"j"} if self.task == TASK_SERIES else set(AXIS_NAMES)
        missing = required - set(names) - set(self.fixed)
        if missing:
            raise ValueError(f"task {self.task} needs parameters {sorted(missing)}")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if int(self.workers) < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers!r}")

    def grid(self) -> list[dict]:
        """Grid points in row-major order over the axes as given."""
        if not self.axes:
            return [dict(self.fixed)]
        value_lists = [axis.values() for axis in self.axes]
        names = [axis.name for axis in self.axes]
        points = []
        for combo in product(*value_lists):
            point = dict(self.fixed)
            point.update(zip(names, (float(v) for v in combo)))
            points.append(point)
        return points


def mean_field_row(params: ModelParams, sol) -> dict:
    """Flatten a MeanFieldSolution into a sweep row."""
    return {
        "omega_a": params.omega_a,
        "gamma": params.gamma,
        "j": params.j,
        "n_atoms": params.two_j,
        "method": sol.method,
        "phase": sol.phase_label,
        "rho_a": sol.point.rho_a,
        "phi_a": sol.point.phi_a,
        "rho_b": sol.point.rho_b,
        "phi_b": sol.point.phi_b,
        "energy": sol.energy,
        "energy_per_atom": sol.energy_per_atom,
        "photons_per_atom": sol.photons_per_atom,
        "excited_fraction": sol.excited_fraction,
    }


def series_curve(j, grid_points: int) -> list[dict]:
    """Rows comparing F(rho, j) with its limit on rho/sqrt(2j) in [0, 1]."""
    two_j = two_j_int(j)
    grid_points = int(grid_points)
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")
    scale = math.sqrt(two_j)
    rows = []
    for x in np.linspace(0.0, 1.0, grid_points):
        rho = float(x) * scale
        f_val = f_series(rho, j)
        f_lim = f_limit(rho, j)
        rows.append(
            {
                "j": two_j / 2.0,
                "rho_over_sqrt2j": float(x),
                "F": f_val,
                "F_limit": f_lim,
                "abs_dev": abs(f_val - f_lim),
            }
        )
    return rows


def compare_row(params: ModelParams, ed_tol: float, *, n_max_ceiling: int,
                minimizer: MinimizerOptions = MinimizerOptions()) -> dict:
    """One exact-vs-mean-field comparison row; errors flag the row."""
    analytic = analytic_minimum(params)
    numeric = numeric_minimum(params, minimizer)
    row = {
        "omega_a": params.omega_a,
        "gamma": params.gamma,
        "j": params.j,
        "n_atoms": params.two_j,
        "e_exact_per_atom": None,
        "e_mf_analytic_per_atom": analytic.energy_per_atom,
        "e_mf_numeric_per_atom": numeric.energy_per_atom,
        "gap_analytic_per_atom": None,
        "gap_numeric_per_atom": None,
        "photons_per_atom_exact": None,
        "photons_per_atom_mf": numeric.photons_per_atom,
        "jz_per_j_exact": None,
        "jz_per_j_mf": 2.0 * numeric.excited_fraction - 1.0,
        "n_max_used": None,
        "cutoff_gap": None,
        "variational_bound_ok": None,
        "error": None,
    }
    try:
        exact = converge_cutoff(params, ed_tol, n_max_ceiling=n_max_ceiling)
    except ConvergenceError as exc:
        row["error"] = str(exc)
        return row
    e_exact_pa = exact.ground_energy / params.two_j
    row.update(
        {
            "e_exact_per_atom": e_exact_pa,
            "gap_analytic_per_atom": abs(analytic.energy_per_atom - e_exact_pa),
            "gap_numeric_per_atom": abs(numeric.energy_per_atom - e_exact_pa),
            "photons_per_atom_exact": exact.photons_per_atom,
            "jz_per_j_exact": exact.jz_per_j,
            "n_max_used": exact.n_max_used,
            "cutoff_gap": exact.cutoff_gap,
            "variational_bound_ok": bool(
                numeric.energy_per_atom >= e_exact_pa - ed_tol / params.two_j
            ),
        }
    )
    return row


def _eval_point(args: tuple[str, dict, dict]) -> list[dict]:
    """Evaluate one grid point; module-level so worker processes can pickle it."""
    task, point, options = args
    if task == TASK_SERIES:
        return series_curve(point["j"], int(options.get("grid_points", 1001)))
    params = ModelParams(point["omega_a"], point["gamma"], point["j"])
    minimizer = MinimizerOptions(**options.get("minimizer", {}))
    if task == TASK_MF_ANALYTIC:
        return [mean_field_row(params, analytic_minimum(params))]
    if task == TASK_MF_FINITE_J:
        return [mean_field_row(params, numeric_minimum(params, minimizer))]
    return [
        compare_row(
            params,
            float(options.get("ed_tol", 1e-8)),
            n_max_ceiling=int(options.get("n_max_ceiling", 8192)),
            minimizer=minimizer,
        )
    ]


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate the grid; rows come back in grid order for any worker count."""
    args = [(spec.task, point, spec.options) for point in spec.grid()]
    if int(spec.workers) == 1 or len(args) <= 1:
        chunks = [_eval_point(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=int(spec.workers)) as pool:
            chunks = list(pool.map(_eval_point, args, chunksize=1))
    return [row for chunk in chunks for row in chunk]


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _json_cell(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r} cannot be serialized")
        return "%.17g" % value
    if isinstance(value, str):
        return json.dumps(value)
    return str(value)


def render_table(rows: list[dict], output_format: str, columns=None) -> str:
    """Render rows to CSV (LF line endings) or a JSON array of objects."""
    if columns is None:
        if not rows:
            raise ValueError("columns are required to render an empty row set")
        columns = list(rows[0].keys())
    if output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row[c]) for c in columns])
        return buf.getvalue()
    if output_format == "json":
        if not rows:
            return "[]\n"
        body = ",\n".join(
            "  {" + ", ".join(f'"{c}": {_json_cell(row[c])}' for c in columns) + "}"
            for row in rows
        )
        return "[\n" + body + "\n]\n"
    raise ValueError(f"format must be one of {FORMATS}, got {output_format!r}")


def write_table(rows: list[dict], output_format: str, destination, columns=None) -> int:
    """Write a table to a path, file-like object, or stdout (None).

    Returns the number of bytes rendered.
    """
    text = render_table(rows, output_format, columns)
    nbytes = len(text.encode("utf-8"))
    try:
        if destination is None:
            sys.stdout.write(text)
        elif hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        raise OSError(f"failed to write table to {destination!r}: {exc}") from exc
    return nbytes
