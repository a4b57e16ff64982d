"""Tests for the exact-diagonalization cross-check."""

import json

import numpy as np
import pytest
from scipy import sparse
from scipy.linalg import eigh

from dickemf import (
    BasisSpec,
    ConvergenceError,
    ModelParams,
    analytic_minimum,
    build_hamiltonian,
    converge_cutoff,
    exact_observables,
    ground_state,
    numeric_minimum,
    save_ground_state,
)

from reference_values import EXACT_J5, NUMERIC_GAPS_GAMMA1


def _sector_masses(vector, basis):
    """Norms of the even/odd (n + m + j) parity components."""
    width = basis.two_j + 1
    idx = np.arange(basis.dimension)
    parity = (idx // width + idx % width) % 2
    return (
        float(np.linalg.norm(vector[parity == 0])),
        float(np.linalg.norm(vector[parity == 1])),
    )


class TestBasis:
    def test_dimension_and_index(self):
        basis = BasisSpec(1.5, 4)
        assert basis.dimension == 5 * 4
        assert basis.index(0, -1.5) == 0
        assert basis.index(0, 1.5) == 3
        assert basis.index(2, -0.5) == 2 * 4 + 1
        with pytest.raises(ValueError):
            basis.index(5, 0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            BasisSpec(1.5, 0)
        with pytest.raises(ValueError):
            BasisSpec(0.7, 4)


class TestHamiltonian:
    def test_decoupled_is_diagonal(self):
        H = build_hamiltonian(ModelParams(1.0, 0.0, 5), BasisSpec(5, 8))
        off = H - sparse.diags(H.diagonal())
        assert off.nnz == 0
        energy, vector = ground_state(H)
        assert energy == -5.0
        assert abs(vector[0]) == pytest.approx(1.0, abs=1e-12)

    def test_j_half_coupling_element(self):
        gamma = 0.7
        basis = BasisSpec(0.5, 1)
        H = build_hamiltonian(ModelParams(1.0, gamma, 0.5), basis).toarray()
        # gamma/sqrt(2j) * sqrt(1) * sqrt(j(j+1) - m(m+1)) = gamma at m=-1/2
        i, k = basis.index(0, -0.5), basis.index(1, 0.5)
        assert H[i, k] == pytest.approx(gamma, rel=1e-15)
        assert H[k, i] == pytest.approx(gamma, rel=1e-15)

    def test_symmetric(self):
        H = build_hamiltonian(ModelParams(0.8, 1.1, 2), BasisSpec(2, 10))
        assert abs(H - H.T).max() == 0.0

    def test_parity_block_structure(self):
        basis = BasisSpec(2, 12)
        H = build_hamiltonian(ModelParams(1.0, 0.7, 2), basis).tocoo()
        width = basis.two_j + 1
        parity = ((H.row // width + H.row % width) - (H.col // width + H.col % width)) % 2
        assert np.all(parity[H.data != 0.0] == 0)

    def test_nnz_cap(self):
        with pytest.raises(ValueError):
            build_hamiltonian(
                ModelParams(1.0, 1.0, 50), BasisSpec(50, 1000), nnz_cap=10_000
            )

    def test_mismatched_j_rejected(self):
        with pytest.raises(ValueError):
            build_hamiltonian(ModelParams(1.0, 1.0, 5), BasisSpec(4, 8))


class TestGroundState:
    def test_perturbative_regime(self):
        # j=1/2, omega_a=1: single intermediate state at gap 2 gives
        # E = -1/2 - gamma^2/2 + O(gamma^4)
        energy, _ = ground_state(
            build_hamiltonian(ModelParams(1.0, 0.05, 0.5), BasisSpec(0.5, 8))
        )
        assert energy == pytest.approx(-0.50125, abs=1e-5)

    def test_residual_contract(self):
        H = build_hamiltonian(ModelParams(1.0, 0.9, 3), BasisSpec(3, 24))
        energy, vector = ground_state(H)
        residual = np.linalg.norm(H @ vector - energy * vector)
        assert residual <= 1e-8 * max(1.0, abs(energy))
        assert np.linalg.norm(vector) == pytest.approx(1.0, abs=1e-12)

    def test_iterative_matches_dense(self):
        # dimension just above the dense cutoff exercises the Lanczos path
        basis = BasisSpec(10, 100)          # dimension 2121
        H = build_hamiltonian(ModelParams(1.0, 1.0, 10), basis)
        energy_iter, vector = ground_state(H)
        w = eigh(H.toarray(), eigvals_only=True, subset_by_index=(0, 0))
        assert energy_iter == pytest.approx(float(w[0]), abs=1e-10)
        assert np.linalg.norm(vector) == pytest.approx(1.0, abs=1e-12)

    def test_ground_vector_single_parity_sector(self):
        # moderate coupling keeps the parity doublet well split
        basis = BasisSpec(2, 16)
        _, vector = ground_state(build_hamiltonian(ModelParams(1.0, 0.3, 2), basis))
        masses = _sector_masses(vector, basis)
        assert min(masses) < 1e-10

    def test_variational_bound_against_decoupled_state(self):
        # coupling can only lower the ground energy below -j omega_a
        for gamma in (0.0, 0.2, 0.6, 1.0):
            energy, _ = ground_state(
                build_hamiltonian(ModelParams(1.0, gamma, 2), BasisSpec(2, 32))
            )
            assert energy <= -2.0 + 1e-12


class TestObservablesExact:
    def test_decoupled_ground_state(self):
        basis = BasisSpec(3, 6)
        _, vector = ground_state(build_hamiltonian(ModelParams(1.0, 0.0, 3), basis))
        photons, jz = exact_observables(vector, basis)
        assert photons == pytest.approx(0.0, abs=1e-14)
        assert jz == pytest.approx(-1.0, abs=1e-14)

    def test_norm_validation(self):
        basis = BasisSpec(1, 2)
        with pytest.raises(ValueError):
            exact_observables(np.ones(basis.dimension), basis)
        with pytest.raises(ValueError):
            exact_observables(np.ones(3), basis)


class TestConvergeCutoff:
    def test_decoupled_converges_immediately(self):
        sol = converge_cutoff(ModelParams(1.0, 0.0, 5), 1e-10)
        assert sol.ground_energy == -5.0
        assert sol.cutoff_gap == 0.0
        assert sol.n_max_used == 16
        assert sol.photons_per_atom == pytest.approx(0.0, abs=1e-14)

    def test_variational_bound_vs_mean_field(self):
        sol = converge_cutoff(ModelParams(1.0, 1.0, 10), 1e-8)
        assert sol.ground_energy <= -21.25 + 1e-8
        assert sol.cutoff_gap < 1e-8

    def test_doubling_monotonicity(self):
        params = ModelParams(1.0, 1.0, 4)
        energies = []
        for n_max in (16, 32, 64, 128):
            energy, _ = ground_state(build_hamiltonian(params, BasisSpec(4, n_max)))
            energies.append(energy)
        assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))

    def test_ceiling_gives_up_with_diagnostics(self):
        with pytest.raises(ConvergenceError) as err:
            converge_cutoff(ModelParams(1.0, 1.0, 5), 1e-14, n_max_ceiling=100)
        assert err.value.n_max is not None

    def test_pinned_reference_point(self):
        sol = converge_cutoff(ModelParams(1.0, 1.0, 5), 1e-8)
        assert sol.ground_energy == pytest.approx(EXACT_J5["ground_energy"], abs=1e-7)
        assert sol.photons_per_atom == pytest.approx(
            EXACT_J5["photons_per_atom"], abs=1e-6
        )
        assert sol.jz_per_j == pytest.approx(EXACT_J5["jz_per_j"], abs=1e-6)
        # mean-field comparison: intensive values agree to a few percent
        # even at j=5, with the finite-size deviation on record
        assert sol.photons_per_atom == pytest.approx(0.9375, abs=0.01)
        assert sol.jz_per_j == pytest.approx(-0.25, abs=0.01)

    def test_agreement_improves_with_system_size(self):
        gaps = []
        for j, pinned in zip((1, 2, 5, 10, 20), NUMERIC_GAPS_GAMMA1):
            params = ModelParams(1.0, 1.0, j)
            exact = converge_cutoff(params, 1e-8)
            numeric = numeric_minimum(params)
            analytic = analytic_minimum(params)
            e_exact = exact.ground_energy / params.two_j
            assert numeric.energy_per_atom >= e_exact - 1e-8
            assert analytic.energy_per_atom >= e_exact - 1e-8
            gap = numeric.energy_per_atom - e_exact
            assert gap == pytest.approx(pinned, rel=1e-5)
            gaps.append(gap)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


class TestSerialization:
    def test_ground_state_dump_layout(self, tmp_path):
        basis = BasisSpec(1, 4)
        H = build_hamiltonian(ModelParams(1.0, 0.4, 1), basis)
        energy, vector = ground_state(H)
        path = tmp_path / "ground.json"
        save_ground_state(path, basis, energy, vector)
        payload = json.loads(path.read_text())
        assert payload["j"] == 1.0
        assert payload["n_max"] == 4
        assert payload["dimension"] == basis.dimension
        assert len(payload["amplitudes"]) == basis.dimension
        assert payload["ground_energy"] == pytest.approx(energy)
        rebuilt = np.array(payload["amplitudes"])
        assert np.linalg.norm(rebuilt) == pytest.approx(1.0, abs=1e-12)
