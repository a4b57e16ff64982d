"""Exact diagonalization of the collective spin-boson Hamiltonian.

H = a'a + omega_a Jz + (gamma/sqrt(N)) (a' + a)(J- + J+),  N = 2j,

realized as a real symmetric sparse matrix on the product basis
|n> x |j, m> with a photon cutoff n_max.  Basis ordering is fixed and
row-major over (n, m): index = n*(2j+1) + (m+j), photon number major,
m ascending, so serialized vectors are portable.

Only the maximal (j = N/2) collective sector is treated.  Cutoff
convergence is certified by doubling n_max until the ground energy
moves less than a tolerance; enlarging the basis can only lower the
energy, so the sequence is monotone.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .series import two_j_int
from .surface import ModelParams

#: Largest dimension handled by the dense eigensolver.
DENSE_CUTOFF = 2000

#: Default cap on stored matrix entries.
DEFAULT_NNZ_CAP = 2_000_000

#: Default give-up point of the cutoff-doubling loop.
DEFAULT_N_MAX_CEILING = 8192

BASIS_ORDERING = "n-major, m ascending: index = n*(2j+1) + (m+j)"


class ConvergenceError(RuntimeError):
    """Diagonalization or cutoff convergence failure, with diagnostics."""

    def __init__(self, message: str, last_gap: float | None = None, n_max: int | None = None):
        super().__init__(message)
        self.last_gap = last_gap
        self.n_max = n_max


@dataclass(frozen=True)
class BasisSpec:
    """Photon-Fock x angular-momentum product basis with cutoff n_max."""

    j: float
    n_max: int

    def __post_init__(self):
        two_j = two_j_int(self.j)
        object.__setattr__(self, "j", two_j / 2.0)
        n_max = int(self.n_max)
        if n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max!r}")
        object.__setattr__(self, "n_max", n_max)

    @property
    def two_j(self) -> int:
        return int(round(2.0 * self.j))

    @property
    def dimension(self) -> int:
        return (self.n_max + 1) * (self.two_j + 1)

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers -j..j, ascending."""
        return np.arange(self.two_j + 1, dtype=np.float64) - self.j

    def index(self, n: int, m: float) -> int:
        """Flat index of |n> x |j, m| in the fixed ordering."""
        col = int(round(m + self.j))
        if not (0 <= n <= self.n_max and 0 <= col <= self.two_j):
            raise ValueError(f"(n={n}, m={m}) outside the basis")
        return n * (self.two_j + 1) + col


def build_hamiltonian(
    params: ModelParams, basis: BasisSpec, *, nnz_cap: int = DEFAULT_NNZ_CAP
) -> sparse.csr_matrix:
    """Assemble H as a real symmetric CSR matrix on the given basis.

    Diagonal entries are n + omega_a*m; the coupling connects
    (n, m) <-> (n+1, m+1) and (n, m) <-> (n+1, m-1) with strength
    (gamma/sqrt(2j)) * sqrt(n+1) * sqrt(j(j+1) - m(m+-1)).
    """
    if basis.j != params.j:
        raise ValueError(f"basis j={basis.j} does not match params j={params.j}")
    two_j = basis.two_j
    width = two_j + 1
    dim = basis.dimension
    est_nnz = dim + (4 * basis.n_max * two_j if params.gamma != 0.0 else 0)
    if est_nnz > nnz_cap:
        raise ValueError(
            f"estimated {est_nnz} stored entries exceed the cap {nnz_cap}; "
            "reduce n_max or raise nnz_cap"
        )

    m_vals = basis.m_values()
    n_vals = np.arange(basis.n_max + 1, dtype=np.float64)
    diag = np.repeat(n_vals, width) + params.omega_a * np.tile(m_vals, basis.n_max + 1)

    if params.gamma == 0.0:
        return sparse.diags(diag, format="csr")

    j = basis.j
    scale = params.gamma / math.sqrt(two_j)
    photon = np.sqrt(np.arange(1.0, basis.n_max + 1.0))       # <n+1|a'|n>
    raise_m = np.sqrt(j * (j + 1.0) - m_vals[:-1] * (m_vals[:-1] + 1.0))
    lower_m = np.sqrt(j * (j + 1.0) - m_vals[1:] * (m_vals[1:] - 1.0))

    n_grid = np.arange(basis.n_max)[:, None]
    # (n, m) -> (n+1, m+1), m = -j .. j-1
    rows_up = (n_grid * width + np.arange(two_j)[None, :]).ravel()
    cols_up = rows_up + width + 1
    vals_up = (scale * photon[:, None] * raise_m[None, :]).ravel()
    # (n, m) -> (n+1, m-1), m = -j+1 .. j
    rows_dn = (n_grid * width + np.arange(1, width)[None, :]).ravel()
    cols_dn = rows_dn + width - 1
    vals_dn = (scale * photon[:, None] * lower_m[None, :]).ravel()

    rows = np.concatenate([np.arange(dim), rows_up, cols_up, rows_dn, cols_dn])
    cols = np.concatenate([np.arange(dim), cols_up, rows_up, cols_dn, rows_dn])
    vals = np.concatenate([diag, vals_up, vals_up, vals_dn, vals_dn])
    return sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()


def _seed_vector(dim: int) -> np.ndarray:
    """Deterministic start vector: the (n=0, m=-j) state plus a spread."""
    v = 1e-3 * np.cos(np.arange(dim, dtype=np.float64))
    v[0] += 1.0
    return v


def ground_state(H: sparse.spmatrix) -> tuple[float, np.ndarray]:
    """Lowest eigenpair of a real symmetric sparse matrix.

    Dense solve up to DENSE_CUTOFF, Lanczos (matrix-vector products
    only) above.  The returned vector is unit norm with a canonical
    sign, and the residual is verified against 1e-8 * max(1, |E|).
    """
    dim = H.shape[0]
    if dim <= DENSE_CUTOFF:
        w, v = eigh(np.asarray(H.todense()), subset_by_index=(0, 0))
        energy, vector = float(w[0]), v[:, 0]
    else:
        try:
            w, v = eigsh(H, k=1, which="SA", v0=_seed_vector(dim))
        except ArpackNoConvergence as exc:
            raise ConvergenceError(
                f"Lanczos did not converge at dimension {dim}: {exc}"
            ) from exc
        energy, vector = float(w[0]), v[:, 0]
    vector = vector / np.linalg.norm(vector)
    if vector[int(np.argmax(np.abs(vector)))] < 0.0:
        vector = -vector
    residual = float(np.linalg.norm(H @ vector - energy * vector))
    if residual > 1e-8 * max(1.0, abs(energy)):
        raise ConvergenceError(
            f"eigenpair residual {residual:.3e} above tolerance at dimension {dim}"
        )
    return energy, vector


def exact_observables(vector: np.ndarray, basis: BasisSpec) -> tuple[float, float]:
    """(photons per atom, <Jz>/j) in the given basis ordering."""
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (basis.dimension,):
        raise ValueError(
            f"vector length {vector.shape} does not match dimension {basis.dimension}"
        )
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"vector must be unit norm, got |v| = {norm!r}")
    weights = vector * vector
    width = basis.two_j + 1
    idx = np.arange(basis.dimension)
    n_mean = float(np.dot(weights, idx // width))
    m_mean = float(np.dot(weights, basis.m_values()[idx % width]))
    return n_mean / basis.two_j, m_mean / basis.j


@dataclass(frozen=True)
class ExactSolution:
    """Converged ground-state summary with cutoff metadata."""

    ground_energy: float
    photons_per_atom: float
    jz_per_j: float
    n_max_used: int
    cutoff_gap: float


def converge_cutoff(
    params: ModelParams,
    tol: float,
    *,
    n_max_start: int | None = None,
    n_max_ceiling: int = DEFAULT_N_MAX_CEILING,
    nnz_cap: int = DEFAULT_NNZ_CAP,
) -> ExactSolution:
    """Double the photon cutoff until the ground energy settles below tol.

    The starting cutoff max(8, ceil(4 gamma^2 2j)) leaves headroom above
    the mean-field photon number 2j gamma^2 (1 - (gamma_c/gamma)^4) and
    the Poisson-like spread around it.
    """
    if not (float(tol) > 0.0):
        raise ValueError(f"tol must be > 0, got {tol!r}")
    two_j = params.two_j
    if n_max_start is None:
        n_max_start = max(8, int(math.ceil(4.0 * params.gamma**2 * two_j)))
    n_max = int(n_max_start)
    if n_max > n_max_ceiling:
        raise ConvergenceError(
            f"starting cutoff {n_max} already beyond the ceiling {n_max_ceiling}",
            n_max=n_max,
        )

    def solve(cutoff: int) -> tuple[float, np.ndarray, BasisSpec]:
        basis = BasisSpec(params.j, cutoff)
        energy, vector = ground_state(build_hamiltonian(params, basis, nnz_cap=nnz_cap))
        return energy, vector, basis

    energy_prev, _, _ = solve(n_max)
    last_gap: float | None = None
    while True:
        doubled = 2 * n_max
        if doubled > n_max_ceiling:
            raise ConvergenceError(
                f"cutoff ceiling {n_max_ceiling} reached at n_max={n_max}, "
                f"last gap {last_gap}",
                last_gap=last_gap,
                n_max=n_max,
            )
        energy, vector, basis = solve(doubled)
        gap = abs(energy_prev - energy)
        if gap < tol:
            photons, jz = exact_observables(vector, basis)
            return ExactSolution(
                ground_energy=energy,
                photons_per_atom=photons,
                jz_per_j=jz,
                n_max_used=doubled,
                cutoff_gap=gap,
            )
        n_max, energy_prev, last_gap = doubled, energy, gap


def save_ground_state(path, basis: BasisSpec, energy: float, vector: np.ndarray) -> None:
    """Dump a ground state as JSON: basis header, then amplitudes in order."""
    payload = {
        "j": basis.j,
        "n_max": basis.n_max,
        "dimension": basis.dimension,
        "ordering": BASIS_ORDERING,
        "ground_energy": float(energy),
        "amplitudes": [float(x) for x in np.asarray(vector).ravel()],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
