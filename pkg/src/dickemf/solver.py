"""Mean-field ground states: analytic limit solutions and a finite-j minimizer.

The thermodynamic-limit surface has closed-form minima separated by the
critical coupling gamma_c = sqrt(omega_a)/2: below it the normal
solution (all amplitudes zero), above it the superradiant one with

    rho_a = gamma * sqrt(2j) * sqrt(1 - (gamma_c/gamma)^4),   phi_a = 0,
    rho_b = sqrt(j)  * sqrt(1 - (gamma_c/gamma)^2),           phi_b = pi.

At finite j no closed form exists; the surface is minimized numerically
after an exact reduction to one dimension: with the canonical phase
choice cos(phi_a) cos(phi_b) = -1, rho_a is eliminated through its
stationarity rho_a = 2 gamma rho_b F(rho_b, j), leaving

    E_red(rho_b) = omega_a rho_b^2 - 4 gamma^2 rho_b^2 F(rho_b, j)^2
                   - j omega_a

which is scanned on a coarse grid over [0, sqrt(2j)] (the multi-start
guard for the double-well shape near threshold) and refined by bounded
scalar minimization.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .series import f_series
from .surface import ModelParams, VariationalPoint, energy_finite_j, energy_thermo

PHASE_NORMAL = "Normal"
PHASE_SUPERRADIANT = "Superradiant"
METHOD_ANALYTIC = "AnalyticThermo"
METHOD_NUMERIC = "NumericFiniteJ"


class MinimizationError(RuntimeError):
    """Finite-j minimization failed to converge (pathological options)."""


@dataclass(frozen=True)
class MeanFieldSolution:
    """Minimizing point with energy and intensive (per-atom) observables."""

    point: VariationalPoint
    energy: float
    phase_label: str
    energy_per_atom: float
    photons_per_atom: float
    excited_fraction: float
    method: str


@dataclass(frozen=True)
class MinimizerOptions:
    """Controls for the finite-j minimizer.

    grid_points: coarse multi-start scan size over rho_b in [0, sqrt(2j)].
    xatol: absolute bracketing tolerance of the scalar refinement.
    max_iter: refinement iteration cap.
    """

    grid_points: int = 512
    xatol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if int(self.grid_points) < 3:
            raise ValueError(f"grid_points must be >= 3, got {self.grid_points}")
        if not (self.xatol > 0.0):
            raise ValueError(f"xatol must be > 0, got {self.xatol}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


def _solution(
    params: ModelParams, point: VariationalPoint, energy: float, method: str
) -> MeanFieldSolution:
    n_atoms = params.two_j
    label = PHASE_NORMAL if point.rho_a == 0.0 and point.rho_b == 0.0 else PHASE_SUPERRADIANT
    return MeanFieldSolution(
        point=point,
        energy=energy,
        phase_label=label,
        energy_per_atom=energy / n_atoms,
        photons_per_atom=point.rho_a**2 / n_atoms,
        excited_fraction=point.rho_b**2 / n_atoms,
        method=method,
    )


def critical_coupling(omega_a) -> float:
    """Threshold coupling gamma_c = sqrt(omega_a)/2."""
    omega_a = float(omega_a)
    if not np.isfinite(omega_a) or omega_a < 0.0:
        raise ValueError(f"omega_a must be finite and >= 0, got {omega_a!r}")
    return math.sqrt(omega_a) / 2.0


def analytic_minimum(params: ModelParams) -> MeanFieldSolution:
    """Closed-form minimum of the thermodynamic-limit surface.

    Returns the normal solution for gamma < gamma_c and the superradiant
    one for gamma >= gamma_c (at equality both coincide, with zero
    amplitudes; the superradiant label is kept there).  Degenerate
    phases of the normal solution are canonicalized to zero.
    """
    gamma_c = critical_coupling(params.omega_a)
    if params.gamma < gamma_c:
        point = VariationalPoint.zero()
        return _solution(params, point, energy_thermo(params, point), METHOD_ANALYTIC)
    if params.gamma == 0.0:
        # omega_a = 0 and gamma = 0: fully degenerate surface, zero point.
        point = VariationalPoint(0.0, 0.0, 0.0, math.pi)
        energy = energy_thermo(params, point)
        return MeanFieldSolution(
            point, energy, PHASE_SUPERRADIANT, energy / params.two_j, 0.0, 0.0,
            METHOD_ANALYTIC,
        )
    kappa_sq = (gamma_c / params.gamma) ** 2
    rho_a = params.gamma * math.sqrt(2.0 * params.j) * math.sqrt(1.0 - kappa_sq**2)
    rho_b = math.sqrt(params.j) * math.sqrt(1.0 - kappa_sq)
    point = VariationalPoint(rho_a, 0.0, rho_b, math.pi)
    energy = energy_thermo(params, point)
    n_atoms = params.two_j
    return MeanFieldSolution(
        point=point,
        energy=energy,
        phase_label=PHASE_SUPERRADIANT,
        energy_per_atom=energy / n_atoms,
        photons_per_atom=point.rho_a**2 / n_atoms,
        excited_fraction=point.rho_b**2 / n_atoms,
        method=METHOD_ANALYTIC,
    )


def reduced_energy(params: ModelParams, rho_b: float) -> float:
    """One-dimensional finite-j profile after eliminating rho_a exactly."""
    f = f_series(rho_b, params.j)
    rb2 = rho_b * rho_b
    return params.omega_a * rb2 - 4.0 * params.gamma**2 * rb2 * f * f - params.j * params.omega_a


def numeric_minimum(
    params: ModelParams, opts: MinimizerOptions = MinimizerOptions()
) -> MeanFieldSolution:
    """Global minimum of the finite-j surface.

    Guarantees that no point of the coarse scan beats the returned
    value, and snaps to the exact decoupled origin whenever nothing
    strictly beats it (so below-threshold results are exactly normal).
    """
    cap = math.sqrt(2.0 * params.j)
    grid = np.linspace(0.0, cap, int(opts.grid_points))
    energies = np.array([reduced_energy(params, r) for r in grid])
    if not np.all(np.isfinite(energies)):
        raise MinimizationError("non-finite values in the coarse scan")
    i_best = int(np.argmin(energies))
    lo = grid[max(i_best - 1, 0)]
    hi = grid[min(i_best + 1, len(grid) - 1)]
    result = optimize.minimize_scalar(
        lambda r: reduced_energy(params, r),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": opts.xatol, "maxiter": int(opts.max_iter)},
    )
    if not result.success:
        raise MinimizationError(f"bracketed refinement failed: {result.message}")
    rho_best, e_best = float(grid[i_best]), float(energies[i_best])
    if float(result.fun) < e_best:
        rho_best, e_best = float(result.x), float(result.fun)

    if e_best >= float(energies[0]):
        # Nothing beats the decoupled origin: exact normal solution.
        point = VariationalPoint.zero()
        return _solution(params, point, energy_finite_j(params, point), METHOD_NUMERIC)

    # The search domain cap is sound only while the profile grows past it.
    if float(energies[-1]) < e_best:
        raise MinimizationError("profile still decreasing at rho_b = sqrt(2j)")

    rho_a = 2.0 * params.gamma * rho_best * f_series(rho_best, params.j)
    point = VariationalPoint(rho_a, 0.0, rho_best, math.pi)
    return _solution(params, point, energy_finite_j(params, point), METHOD_NUMERIC)


def observables(sol: MeanFieldSolution, params: ModelParams) -> tuple[float, float, float]:
    """Per-atom observables (energy, photon number, excited fraction)."""
    n_atoms = params.two_j
    return (
        sol.energy / n_atoms,
        sol.point.rho_a**2 / n_atoms,
        sol.point.rho_b**2 / n_atoms,
    )
