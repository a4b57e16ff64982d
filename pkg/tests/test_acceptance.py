"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v -s`).

Tolerances and runtime budgets are fixed here, not calibrated later.
Reference numbers come from tests/reference_values.py (extended
precision direct summation for the series, a converged diagonalization
run for the exact pins) or from closed forms stated inline.
"""

import contextlib
import math
import time

import numpy as np

from dickemf import (
    COLUMNS,
    TASK_MF_ANALYTIC,
    Axis,
    BasisSpec,
    ModelParams,
    SweepSpec,
    VariationalPoint,
    analytic_minimum,
    build_hamiltonian,
    converge_cutoff,
    critical_coupling,
    energy_thermo,
    f_series,
    gradient_thermo,
    ground_state,
    numeric_minimum,
    render_table,
    run_sweep,
    sup_deviation,
)

from reference_values import SUP_DEV


@contextlib.contextmanager
def criterion(number: int, title: str, budget_s: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] criterion {number}: FAIL - {title}")
        raise
    elapsed = time.perf_counter() - start
    if budget_s is not None and elapsed > budget_s:
        print(f"[ACCEPTANCE] criterion {number}: FAIL - {title} "
              f"(runtime {elapsed:.2f}s over budget {budget_s}s)")
        raise AssertionError(f"criterion {number} exceeded runtime budget")
    print(f"[ACCEPTANCE] criterion {number}: PASS - {title} ({elapsed:.2f}s)")


def test_criterion_1_series_convergence():
    with criterion(1, "series-vs-limit sup deviation decreasing over j", 5.0):
        devs = {j: sup_deviation(j, 1001) for j in (10, 100, 1000)}
        assert devs[10] > devs[100] > devs[1000]
        for j, expected in SUP_DEV.items():
            assert abs(devs[j] - expected) <= 1e-10 * max(1.0, expected)


def test_criterion_2_gradient_matches_finite_differences():
    with criterion(2, "analytic gradient vs central differences", 1.0):
        rng = np.random.default_rng(42)
        h = 1e-5
        fields = ("rho_a", "phi_a", "rho_b", "phi_b")
        for _ in range(100):
            params = ModelParams(
                rng.uniform(0.3, 2.0), rng.uniform(0.1, 2.0), float(rng.integers(1, 21))
            )
            pt = VariationalPoint(
                float(rng.uniform(0.0, 3.0)),
                float(rng.uniform(0.0, 2.0 * math.pi)),
                math.sqrt(float(rng.uniform(0.0, 1.8 * params.j))),
                float(rng.uniform(0.0, 2.0 * math.pi)),
            )
            analytic = gradient_thermo(params, pt).as_array()
            fd = np.empty(4)
            for k, name in enumerate(fields):
                kw = {f: getattr(pt, f) for f in fields}
                kw[name] = getattr(pt, name) + h
                e_plus = energy_thermo(params, VariationalPoint(**kw))
                kw[name] = getattr(pt, name) - h
                e_minus = energy_thermo(params, VariationalPoint(**kw))
                fd[k] = (e_plus - e_minus) / (2.0 * h)
            rel = np.abs(analytic - fd) / np.maximum(np.abs(fd), 1e-12)
            assert rel.max() <= 1e-6


def test_criterion_3_superradiant_point_is_stationary():
    with criterion(3, "closed-form superradiant point annihilates the gradient", 1.0):
        for omega_a in (0.5, 1.0, 2.0):
            gamma_c = critical_coupling(omega_a)
            for gamma in np.arange(gamma_c, 2.0 + 1e-9, 0.1):
                params = ModelParams(omega_a, float(gamma), 10)
                point = analytic_minimum(params).point
                assert gradient_thermo(params, point).max_abs() <= 1e-10


def test_criterion_4_threshold_and_observables():
    with criterion(4, "threshold at gamma_c and closed-form observables", 10.0):
        for gamma in np.linspace(0.0, 1.0, 101):
            sol = analytic_minimum(ModelParams(1.0, float(gamma), 10))
            if gamma <= 0.5:
                assert sol.photons_per_atom == 0.0
                assert sol.excited_fraction == 0.0
            else:
                assert sol.photons_per_atom > 0.0
                assert sol.excited_fraction > 0.0
        analytic = analytic_minimum(ModelParams(1.0, 1.0, 1e6))
        numeric = numeric_minimum(ModelParams(1.0, 1.0, 1e6))
        for sol in (analytic, numeric):
            assert abs(sol.energy_per_atom - (-1.0625)) <= 1e-4
            assert abs(sol.photons_per_atom - 0.9375) <= 1e-4
            assert abs(sol.excited_fraction - 0.375) <= 1e-4


def test_criterion_5_second_order_transition_signature():
    with criterion(5, "continuous slope, discontinuous curvature at gamma_c"):
        h = 1e-3
        gammas = np.arange(0.5 - 20 * h, 0.5 + 20 * h + h / 2, h)
        e = np.array([
            analytic_minimum(ModelParams(1.0, float(g), 10)).energy_per_atom
            for g in gammas
        ])
        d1 = np.diff(e)                      # first finite differences
        assert np.max(np.abs(np.diff(d1))) < 1e-3   # no slope jump at step 1e-3
        d2 = np.diff(e, 2) / h**2            # curvature estimate
        below = d2[gammas[1:-1] < 0.5 - h]
        above = d2[gammas[1:-1] > 0.5 + h]
        assert np.max(np.abs(below)) < 1e-6         # flat branch: zero curvature
        assert np.max(above) < -7.0                 # jump to ~ -8: detectable


def test_criterion_6_mean_field_vs_exact():
    with criterion(6, "variational bound and shrinking gap vs diagonalization", 60.0):
        for gamma in (0.2, 1.0):
            gaps = []
            for j in (1, 2, 5, 10, 20):
                params = ModelParams(1.0, gamma, j)
                exact = converge_cutoff(params, 1e-8)
                e_exact = exact.ground_energy / params.two_j
                for sol in (analytic_minimum(params), numeric_minimum(params)):
                    assert sol.energy_per_atom >= e_exact - 1e-8
                gaps.append(numeric_minimum(params).energy_per_atom - e_exact)
            if gamma == 1.0:
                assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_criterion_7_small_system_closed_forms():
    with criterion(7, "perturbative ground energy and Gaussian series at j=1/2"):
        energy, _ = ground_state(
            build_hamiltonian(ModelParams(1.0, 0.05, 0.5), BasisSpec(0.5, 8))
        )
        assert abs(energy - (-0.50125)) <= 1e-5
        for rho in np.linspace(0.0, 4.0, 100):
            expected = math.exp(-float(rho) ** 2)
            assert abs(f_series(float(rho), 0.5) - expected) <= 5e-15 * max(expected, 1e-300)


def test_criterion_8_sweep_determinism():
    with criterion(8, "byte-identical sweeps across runs and worker counts"):
        def spec(workers):
            return SweepSpec(
                task=TASK_MF_ANALYTIC,
                axes=(Axis("gamma", 0.0, 1.5, 151),),
                fixed={"omega_a": 1.0, "j": 10.0},
                workers=workers,
            )
        columns = COLUMNS[TASK_MF_ANALYTIC]
        first = render_table(run_sweep(spec(1)), "csv", columns)
        second = render_table(run_sweep(spec(1)), "csv", columns)
        with_pool = render_table(run_sweep(spec(4)), "csv", columns)
        assert first == second
        assert first == with_pool
