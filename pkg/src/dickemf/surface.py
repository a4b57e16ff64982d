"""Variational energy surfaces over a pair of coherent-state amplitudes.

The trial state is a product of two coherent states: |alpha> for the
photon mode and |beta> for the collective atomic boson, parameterized as
alpha = rho_a e^{i phi_a}, beta = rho_b e^{i phi_b}.  Energies are in
units of the field quantum (hbar * omega_field); the atomic splitting
omega_a and the coupling gamma are dimensionless in the same units.

Two surfaces are provided: the finite-j form built on the truncated
series F(rho_b, j), and its thermodynamic-limit form where F is replaced
by sqrt(1 - rho_b^2/(2j)).  The gradient of the limit form is the set of
literal partial derivatives of that expression; the stationarity
conditions printed elsewhere in rescaled form are not used.
"""

import math
from dataclasses import dataclass

import numpy as np

from .series import f_limit, f_series, two_j_int

TWO_PI = 2.0 * math.pi


def _checked_nonneg(value, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Hamiltonian parameters: splitting omega_a, coupling gamma, size j.

    j = N/2 is half the atom count and must be a positive half-integer.
    """

    omega_a: float
    gamma: float
    j: float

    def __post_init__(self):
        object.__setattr__(self, "omega_a", _checked_nonneg(self.omega_a, "omega_a"))
        object.__setattr__(self, "gamma", _checked_nonneg(self.gamma, "gamma"))
        two_j = two_j_int(self.j)
        object.__setattr__(self, "j", two_j / 2.0)

    @property
    def two_j(self) -> int:
        """Atom count N = 2j."""
        return int(round(2.0 * self.j))


@dataclass(frozen=True)
class VariationalPoint:
    """Coherent-state amplitudes (rho_a, phi_a) and (rho_b, phi_b).

    Moduli are >= 0; phases are reduced to [0, 2*pi) on construction.
    """

    rho_a: float
    phi_a: float
    rho_b: float
    phi_b: float

    def __post_init__(self):
        object.__setattr__(self, "rho_a", _checked_nonneg(self.rho_a, "rho_a"))
        object.__setattr__(self, "rho_b", _checked_nonneg(self.rho_b, "rho_b"))
        for name in ("phi_a", "phi_b"):
            phi = float(getattr(self, name))
            if not np.isfinite(phi):
                raise ValueError(f"{name} must be finite, got {phi!r}")
            object.__setattr__(self, name, phi % TWO_PI)

    @classmethod
    def zero(cls) -> "VariationalPoint":
        return cls(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class GradientVector:
    """Partial derivatives of the limit-form energy surface."""

    d_rho_a: float
    d_phi_a: float
    d_rho_b: float
    d_phi_b: float

    def as_array(self) -> np.ndarray:
        return np.array([self.d_rho_a, self.d_phi_a, self.d_rho_b, self.d_phi_b])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.as_array())))


def energy_finite_j(params: ModelParams, pt: VariationalPoint) -> float:
    """Energy surface at finite j, using the truncated series F(rho_b, j)."""
    coupling = (
        4.0
        * params.gamma
        * pt.rho_a
        * pt.rho_b
        * math.cos(pt.phi_a)
        * math.cos(pt.phi_b)
        * f_series(pt.rho_b, params.j)
    )
    return pt.rho_a**2 + (pt.rho_b**2 - params.j) * params.omega_a + coupling


def energy_thermo(params: ModelParams, pt: VariationalPoint) -> float:
    """Thermodynamic-limit energy surface; domain error for rho_b^2 > 2j."""
    coupling = (
        4.0
        * params.gamma
        * pt.rho_a
        * pt.rho_b
        * f_limit(pt.rho_b, params.j)
        * math.cos(pt.phi_a)
        * math.cos(pt.phi_b)
    )
    return pt.rho_a**2 + (pt.rho_b**2 - params.j) * params.omega_a + coupling


def gradient_thermo(params: ModelParams, pt: VariationalPoint) -> GradientVector:
    """Exact partial derivatives of the limit-form energy.

    Requires rho_b^2 < 2j strictly: the square root has infinite slope
    at the boundary, so minimizers should stay at
    rho_b <= sqrt(2j) * (1 - 1e-12).
    """
    two_j = params.two_j
    x = 1.0 - pt.rho_b**2 / two_j
    if x <= 0.0:
        raise ValueError(
            f"gradient undefined at rho_b^2 = {pt.rho_b**2:g} >= 2j = {two_j}"
        )
    root = math.sqrt(x)
    ca, sa = math.cos(pt.phi_a), math.sin(pt.phi_a)
    cb, sb = math.cos(pt.phi_b), math.sin(pt.phi_b)
    g4 = 4.0 * params.gamma
    return GradientVector(
        d_rho_a=2.0 * pt.rho_a + g4 * pt.rho_b * root * ca * cb,
        d_phi_a=-g4 * pt.rho_a * pt.rho_b * root * sa * cb,
        d_rho_b=(
            2.0 * pt.rho_b * params.omega_a
            + g4 * pt.rho_a * ca * cb * (1.0 - pt.rho_b**2 / params.j) / root
        ),
        d_phi_b=-g4 * pt.rho_a * pt.rho_b * root * ca * sb,
    )
