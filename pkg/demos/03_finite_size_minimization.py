#!/usr/bin/env python3
"""Finite-size mean field: minimizing the truncated-series surface.

At finite j the energy surface uses the full truncated series F(rho, j)
instead of its limit, and the minimum has no closed form.  The solver
reduces the problem to one dimension (the photon amplitude is eliminated
through its stationarity condition) and scans + refines the profile.
This script shows the reduced profile for a small system and how the
numeric minimum walks toward the analytic limit values as j grows.

Run from the repository root:  python demos/03_finite_size_minimization.py
"""

from pathlib import Path

import numpy as np

from dickemf import ModelParams, analytic_minimum, numeric_minimum, reduced_energy

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- the reduced 1-D profile for two atoms (j = 1), above threshold
params = ModelParams(1.0, 1.0, 1)
rho = np.linspace(0.0, np.sqrt(2.0), 400)
profile = [reduced_energy(params, float(r)) for r in rho]
sol = numeric_minimum(params)
print(f"j = 1: minimum at rho_b = {sol.point.rho_b:.6f}, "
      f"energy = {sol.energy:.6f} (profile min {min(profile):.6f})")

# --- convergence of the intensive observables to the analytic limit
print("\n        energy/atom    photons/atom   excited fraction")
limit = analytic_minimum(ModelParams(1.0, 1.0, 10))
for j in (0.5, 1, 2, 5, 10, 100, 1000, 10000):
    s = numeric_minimum(ModelParams(1.0, 1.0, j))
    print(f"j={j:<7g} {s.energy_per_atom:>12.8f} {s.photons_per_atom:>14.8f} "
          f"{s.excited_fraction:>15.8f}")
print(f"limit    {limit.energy_per_atom:>12.8f} {limit.photons_per_atom:>14.8f} "
      f"{limit.excited_fraction:>15.8f}")
print("\nthe finite-j minimum always lies above the limit-form energy and")
print("approaches it like 1/j; below gamma_c the numeric solver returns the")
print("exact normal solution (all amplitudes zero).")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(rho, profile)
    ax.axvline(sol.point.rho_b, color="k", ls=":", lw=1)
    ax.set_xlabel(r"$\rho_b$")
    ax.set_ylabel(r"reduced energy $E_{red}(\rho_b)$")
    ax.set_title(r"$j = 1$, $\omega_A = 1$, $\gamma = 1$")
    fig.tight_layout()
    fig.savefig(OUT / "reduced_profile.png", dpi=150)
    print(f"plot -> {OUT / 'reduced_profile.png'}")
