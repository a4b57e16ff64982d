"""Command-line interface.

Subcommands: fseries, surface, minimize, phase-diagram, compare.
Numeric arguments accept decimals and simple rationals ("0.5", "1/2").
Parameters may also come from a flat key=value config file (# comments);
explicit flags override file values.  Exit status: 0 success, 1
validation error, 2 numerical non-convergence.
"""

import argparse
import math
import os
import sys

import numpy as np

from .exact import DEFAULT_N_MAX_CEILING, ConvergenceError
from .series import sup_deviation
from .solver import (
    MinimizationError,
    MinimizerOptions,
    analytic_minimum,
    numeric_minimum,
)
from .surface import ModelParams, VariationalPoint, energy_finite_j, energy_thermo
from .sweep import (
    COLUMNS,
    TASK_EXACT_COMPARE,
    TASK_MF_ANALYTIC,
    TASK_MF_FINITE_J,
    TASK_SERIES,
    Axis,
    SweepSpec,
    compare_row,
    mean_field_row,
    run_sweep,
    series_curve,
    write_table,
)

WORKERS_ENV = "DICKEMF_WORKERS"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NO_CONVERGENCE = 2

_SURFACE_COLUMNS = (
    "omega_a", "gamma", "j", "form",
    "rho_a", "phi_a", "rho_b", "phi_b", "energy",
)


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with status 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def parse_number(text) -> float:
    """Parse '0.5', '1/2', '1e-3' and similar into a float."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return float(num) / float(den)
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def parse_number_list(text) -> list[float]:
    items = [piece for piece in str(text).split(",") if piece.strip()]
    if not items:
        raise argparse.ArgumentTypeError(f"empty number list: {text!r}")
    return [parse_number(piece) for piece in items]


def parse_range(text):
    """'MIN:MAX:COUNT[:log]' -> (min, max, count, spacing); else a number."""
    s = str(text).strip()
    if ":" not in s:
        return parse_number(s)
    parts = s.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(
            f"expected VALUE or MIN:MAX:COUNT[:log], got {text!r}"
        )
    spacing = "linear"
    if len(parts) == 4:
        spacing = parts[3].strip().lower()
        if spacing not in ("linear", "log"):
            raise argparse.ArgumentTypeError(f"unknown spacing {parts[3]!r}")
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis count in {text!r}") from exc
    return (parse_number(parts[0]), parse_number(parts[1]), count, spacing)


def _parse_bool(text) -> bool:
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_config(path) -> dict:
    """Flat key=value lines; '#' starts a comment; keys may use - or _."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# Per-command converters for config-file values and hard defaults applied
# after the config merge.  Parser defaults stay at None so that "flag not
# given" is distinguishable from any real value.
_CONVERTERS = {
    "fseries": {"j": parse_number_list, "grid": int},
    "surface": {
        "omega_a": parse_number, "gamma": parse_number, "j": parse_number,
        "form": str, "rho_a": parse_range, "rho_b": parse_range,
        "phi_a": parse_number, "phi_b": parse_number,
    },
    "minimize": {
        "omega_a": parse_number, "gamma": parse_number, "j": parse_number,
        "finite_j": _parse_bool, "grid_points": int, "xatol": parse_number,
    },
    "phase-diagram": {
        "omega_a": parse_range, "gamma": parse_range, "j": parse_range,
        "task": str, "grid_points": int, "workers": int,
    },
    "compare": {
        "omega_a": parse_number, "gamma": parse_number, "j": parse_number_list,
        "tol": parse_number, "n_max_ceiling": int,
    },
}
_SHARED_CONVERTERS = {"format": str, "out": str, "verbose": _parse_bool}

_DEFAULTS = {
    "fseries": {"grid": 1001},
    "surface": {"form": "finite", "phi_a": 0.0, "phi_b": math.pi},
    "minimize": {"finite_j": False, "grid_points": 512, "xatol": 1e-10},
    "phase-diagram": {"task": "analytic", "grid_points": 512},
    "compare": {"tol": 1e-8, "n_max_ceiling": DEFAULT_N_MAX_CEILING},
}
_SHARED_DEFAULTS = {"format": "csv", "verbose": False}


def _add_output_flags(parser):
    parser.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output table format (default: csv)")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="write the table to PATH instead of stdout")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="flat key=value config file; flags override it")
    parser.add_argument("-v", "--verbose", action="store_const", const=True,
                        default=None, help="print progress notes to stderr")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="dickemf",
        description="Mean-field and exact treatments of the Dicke model.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("fseries", help="series-vs-limit convergence table",
                       description="Tabulate F(rho, j) against its large-j limit.")
    p.add_argument("--j", type=parse_number_list, default=None,
                   help="comma-separated list of j values")
    p.add_argument("--grid", type=int, default=None,
                   help="grid points over rho/sqrt(2j) in [0, 1] (default: 1001)")
    _add_output_flags(p)

    p = sub.add_parser("surface", help="grid dump of an energy surface",
                       description="Tabulate the energy surface over rho_a x rho_b.")
    p.add_argument("--omega-a", type=parse_number, default=None)
    p.add_argument("--gamma", type=parse_number, default=None)
    p.add_argument("--j", type=parse_number, default=None)
    p.add_argument("--form", choices=("finite", "thermo"), default=None,
                   help="finite-j series form or thermodynamic-limit form")
    p.add_argument("--rho-a", type=parse_range, default=None,
                   help="photon amplitude: VALUE or MIN:MAX:COUNT")
    p.add_argument("--rho-b", type=parse_range, default=None,
                   help="atomic amplitude: VALUE or MIN:MAX:COUNT")
    p.add_argument("--phi-a", type=parse_number, default=None,
                   help="photon phase (default: 0)")
    p.add_argument("--phi-b", type=parse_number, default=None,
                   help="atomic phase (default: pi)")
    _add_output_flags(p)

    p = sub.add_parser("minimize", help="mean-field ground state at one point",
                       description="Minimize the energy surface for one parameter set.")
    p.add_argument("--omega-a", type=parse_number, default=None)
    p.add_argument("--gamma", type=parse_number, default=None)
    p.add_argument("--j", type=parse_number, default=None)
    p.add_argument("--finite-j", action="store_const", const=True, default=None,
                   help="minimize the finite-j surface instead of the analytic limit")
    p.add_argument("--grid-points", type=int, default=None,
                   help="coarse-scan size of the finite-j minimizer (default: 512)")
    p.add_argument("--xatol", type=parse_number, default=None,
                   help="refinement tolerance of the finite-j minimizer")
    _add_output_flags(p)

    p = sub.add_parser("phase-diagram", help="mean-field sweep over a parameter grid",
                       description="Sweep the mean-field solution over parameter axes; "
                                   "any of --omega-a/--gamma/--j may be MIN:MAX:COUNT[:log].")
    p.add_argument("--omega-a", type=parse_range, default=None)
    p.add_argument("--gamma", type=parse_range, default=None)
    p.add_argument("--j", type=parse_range, default=None)
    p.add_argument("--task", choices=("analytic", "finite-j"), default=None,
                   help="analytic limit solution or finite-j numeric minimum")
    p.add_argument("--grid-points", type=int, default=None,
                   help="finite-j minimizer coarse-scan size")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    _add_output_flags(p)

    p = sub.add_parser("compare", help="exact diagonalization vs mean field",
                       description="Converge the exact ground state and compare both "
                                   "mean-field paths, one row per j.")
    p.add_argument("--omega-a", type=parse_number, default=None)
    p.add_argument("--gamma", type=parse_number, default=None)
    p.add_argument("--j", type=parse_number_list, default=None,
                   help="comma-separated list of j values")
    p.add_argument("--tol", type=parse_number, default=None,
                   help="cutoff convergence tolerance (default: 1e-8)")
    p.add_argument("--n-max-ceiling", type=int, default=None,
                   help="give-up photon cutoff for the doubling scheme")
    _add_output_flags(p)

    return parser


def _merge_config_and_defaults(args) -> None:
    """Resolution order: explicit flag > config file > built-in default."""
    converters = dict(_SHARED_CONVERTERS)
    converters.update(_CONVERTERS[args.command])
    if getattr(args, "config", None):
        values = load_config(args.config)
        unknown = set(values) - set(converters)
        if unknown:
            raise ValueError(
                f"unknown config keys {sorted(unknown)} for command {args.command!r}"
            )
        for key, raw in values.items():
            if getattr(args, key, None) is None:
                setattr(args, key, converters[key](raw))
    defaults = dict(_SHARED_DEFAULTS)
    defaults.update(_DEFAULTS[args.command])
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _require(args, names) -> None:
    missing = [n.replace("_", "-") for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValueError(f"missing required parameters: --{', --'.join(missing)}")


def _note(args, message: str) -> None:
    if getattr(args, "verbose", False):
        print(message, file=sys.stderr)


def _grid_values(spec) -> np.ndarray:
    if isinstance(spec, tuple):
        lo, hi, count, spacing = spec
        if count < 1:
            raise ValueError(f"axis count must be >= 1, got {count}")
        return np.geomspace(lo, hi, count) if spacing == "log" else np.linspace(lo, hi, count)
    return np.asarray([float(spec)])


def cmd_fseries(args) -> int:
    _require(args, ["j"])
    if int(args.grid) < 2:
        raise ValueError(f"--grid must be >= 2, got {args.grid}")
    rows = []
    for j in args.j:
        rows.extend(series_curve(j, int(args.grid)))
    write_table(rows, args.format, args.out, columns=COLUMNS[TASK_SERIES])
    for j in args.j:
        print(f"sup deviation j={j:g}: {sup_deviation(j, int(args.grid)):.6e}",
              file=sys.stderr)
    return EXIT_OK


def cmd_surface(args) -> int:
    _require(args, ["omega_a", "gamma", "j", "rho_a", "rho_b"])
    params = ModelParams(args.omega_a, args.gamma, args.j)
    energy_fn = energy_finite_j if args.form == "finite" else energy_thermo
    rows = []
    for ra in _grid_values(args.rho_a):
        for rb in _grid_values(args.rho_b):
            pt = VariationalPoint(float(ra), args.phi_a, float(rb), args.phi_b)
            rows.append(
                {
                    "omega_a": params.omega_a, "gamma": params.gamma, "j": params.j,
                    "form": args.form,
                    "rho_a": pt.rho_a, "phi_a": pt.phi_a,
                    "rho_b": pt.rho_b, "phi_b": pt.phi_b,
                    "energy": energy_fn(params, pt),
                }
            )
    write_table(rows, args.format, args.out, columns=_SURFACE_COLUMNS)
    return EXIT_OK


def cmd_minimize(args) -> int:
    _require(args, ["omega_a", "gamma", "j"])
    params = ModelParams(args.omega_a, args.gamma, args.j)
    if args.finite_j:
        opts = MinimizerOptions(grid_points=int(args.grid_points), xatol=args.xatol)
        sol = numeric_minimum(params, opts)
    else:
        sol = analytic_minimum(params)
    _note(args, f"phase {sol.phase_label}, energy {sol.energy:.12g}")
    write_table([mean_field_row(params, sol)], args.format, args.out,
                columns=COLUMNS[TASK_MF_ANALYTIC])
    return EXIT_OK


def cmd_phase_diagram(args) -> int:
    _require(args, ["omega_a", "gamma", "j"])
    axes, fixed = [], {}
    for name in ("gamma", "omega_a", "j"):
        value = getattr(args, name)
        if isinstance(value, tuple):
            lo, hi, count, spacing = value
            axes.append(Axis(name, lo, hi, count, spacing))
        else:
            fixed[name] = float(value)
    task = TASK_MF_ANALYTIC if args.task == "analytic" else TASK_MF_FINITE_J
    workers = args.workers if args.workers is not None else _default_workers()
    spec = SweepSpec(
        task=task,
        axes=tuple(axes),
        fixed=fixed,
        output_format=args.format,
        workers=int(workers),
        options={"minimizer": {"grid_points": int(args.grid_points)}},
    )
    rows = run_sweep(spec)
    _note(args, f"{len(rows)} rows")
    write_table(rows, args.format, args.out, columns=COLUMNS[task])
    return EXIT_OK


def cmd_compare(args) -> int:
    _require(args, ["omega_a", "gamma", "j"])
    if not (float(args.tol) > 0.0):
        raise ValueError(f"--tol must be > 0, got {args.tol}")
    rows = []
    failed = False
    for j in args.j:
        params = ModelParams(args.omega_a, args.gamma, j)
        row = compare_row(params, float(args.tol), n_max_ceiling=int(args.n_max_ceiling))
        rows.append(row)
        if row["error"] is not None or row["variational_bound_ok"] is not True:
            failed = True
        _note(args, f"j={j:g}: exact/atom {row['e_exact_per_atom']}, error {row['error']}")
    write_table(rows, args.format, args.out, columns=COLUMNS[TASK_EXACT_COMPARE])
    return EXIT_NO_CONVERGENCE if failed else EXIT_OK


_COMMANDS = {
    "fseries": cmd_fseries,
    "surface": cmd_surface,
    "minimize": cmd_minimize,
    "phase-diagram": cmd_phase_diagram,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_VALIDATION
    try:
        _merge_config_and_defaults(args)
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"dickemf: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (MinimizationError, ConvergenceError) as exc:
        print(f"dickemf: did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
