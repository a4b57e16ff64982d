"""Frozen reference values for the test suite.

The series values and sup-norm deviations were computed by the
extended-precision direct-summation oracle in _oracles.py (mpmath,
40 decimal digits; regenerate with `python tests/_oracles.py`).  The
exact-diagonalization pins were produced by a converged oracle run
(cutoff-doubling tolerance 1e-8) and guard against regressions; they
are cross-validated in-suite by the variational bound, perturbation
theory, and parity checks.
"""

# max |F(rho,j) - sqrt(1 - rho^2/2j)| on the 1001-point grid of
# rho/sqrt(2j) in [0, 1]
SUP_DEV = {
    10: 0.19408697240769879,
    100: 0.10957677699786086,
    1000: 0.06155072986734958,
}

# F(rho, j) spot values, keyed by (rho, two_j); rho is the exact double
# the library receives.
F_SPOTS = {
    (2.5, 7): 0.32710273067435511,
    (17.3, 300): 0.10324819705665186,
    (3.1304951684997055, 20): 0.7038190982647603,     # 0.7 * sqrt(20)
    (44.6766381904458, 2000): 0.067404715118323857,   # 0.999 * sqrt(2000)
    (31.0, 2000): 0.72068317440237109,
    (900.0, 1000000): 0.4358886717807604,
}

# Converged exact ground state at omega_a=1, gamma=1, j=5 (tol 1e-8).
EXACT_J5 = {
    "ground_energy": -10.638406590486372,
    "photons_per_atom": 0.9338617715355074,
    "jz_per_j": -0.2554807316278741,
}

# Per-atom |E_mf_numeric - E_exact|/(2j) at omega_a=1, gamma=1 over
# j = 1, 2, 5, 10, 20 (ED tol 1e-8, default minimizer).
NUMERIC_GAPS_GAMMA1 = [
    0.14389876657450285,
    0.07540273936135244,
    0.02758329495655465,
    0.012615009626263385,
    0.006097870321384979,
]
