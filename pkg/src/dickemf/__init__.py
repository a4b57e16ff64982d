"""Coherent-state mean-field treatment of the Dicke model.

The package evaluates the variational energy surface of N two-level
atoms coupled to a single field mode (finite-size and thermodynamic
limit), locates its minima, derives phase-transition observables, and
cross-checks everything against sparse exact diagonalization.
"""

from .exact import (
    BASIS_ORDERING,
    DEFAULT_N_MAX_CEILING,
    DEFAULT_NNZ_CAP,
    DENSE_CUTOFF,
    BasisSpec,
    ConvergenceError,
    ExactSolution,
    build_hamiltonian,
    converge_cutoff,
    exact_observables,
    ground_state,
    save_ground_state,
)
from .series import (
    SKIP_TOL,
    SeriesEval,
    f_limit,
    f_series,
    f_series_detail,
    f_series_full,
    sup_deviation,
    two_j_int,
)
from .solver import (
    METHOD_ANALYTIC,
    METHOD_NUMERIC,
    PHASE_NORMAL,
    PHASE_SUPERRADIANT,
    MeanFieldSolution,
    MinimizationError,
    MinimizerOptions,
    analytic_minimum,
    critical_coupling,
    numeric_minimum,
    observables,
    reduced_energy,
)
from .surface import (
    GradientVector,
    ModelParams,
    VariationalPoint,
    energy_finite_j,
    energy_thermo,
    gradient_thermo,
)
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
    render_table,
    run_sweep,
    series_curve,
    write_table,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BASIS_ORDERING",
    "BasisSpec",
    "COLUMNS",
    "ConvergenceError",
    "DEFAULT_NNZ_CAP",
    "DEFAULT_N_MAX_CEILING",
    "DENSE_CUTOFF",
    "ExactSolution",
    "GradientVector",
    "METHOD_ANALYTIC",
    "METHOD_NUMERIC",
    "MeanFieldSolution",
    "MinimizationError",
    "MinimizerOptions",
    "ModelParams",
    "PHASE_NORMAL",
    "PHASE_SUPERRADIANT",
    "SKIP_TOL",
    "SeriesEval",
    "SweepSpec",
    "TASK_EXACT_COMPARE",
    "TASK_MF_ANALYTIC",
    "TASK_MF_FINITE_J",
    "TASK_SERIES",
    "VariationalPoint",
    "analytic_minimum",
    "build_hamiltonian",
    "compare_row",
    "converge_cutoff",
    "critical_coupling",
    "energy_finite_j",
    "energy_thermo",
    "exact_observables",
    "f_limit",
    "f_series",
    "f_series_detail",
    "f_series_full",
    "gradient_thermo",
    "ground_state",
    "mean_field_row",
    "numeric_minimum",
    "observables",
    "reduced_energy",
    "render_table",
    "run_sweep",
    "save_ground_state",
    "series_curve",
    "sup_deviation",
    "two_j_int",
    "write_table",
]
