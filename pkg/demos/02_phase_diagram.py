#!/usr/bin/env python3
"""The superradiant transition in the thermodynamic limit.

Sweeps the closed-form mean-field solution along the coupling gamma at
omega_a = 1.  Below gamma_c = sqrt(omega_a)/2 = 0.5 every intensive
observable is exactly zero; above it the photon number and the excited
fraction grow continuously while the energy curvature jumps - the
signature of a second-order transition.

Run from the repository root:  python demos/02_phase_diagram.py
"""

from pathlib import Path

import numpy as np

from dickemf import (
    COLUMNS,
    TASK_MF_ANALYTIC,
    Axis,
    SweepSpec,
    critical_coupling,
    run_sweep,
    write_table,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

spec = SweepSpec(
    task=TASK_MF_ANALYTIC,
    axes=(Axis("gamma", 0.0, 2.0, 401),),
    fixed={"omega_a": 1.0, "j": 10.0},
)
rows = run_sweep(spec)
write_table(rows, "csv", OUT / "phase_diagram.csv", COLUMNS[TASK_MF_ANALYTIC])
print(f"wrote {len(rows)} rows -> {OUT / 'phase_diagram.csv'}")

gamma_c = critical_coupling(1.0)
first_excited = next(r for r in rows if r["excited_fraction"] > 0.0)
print(f"gamma_c = {gamma_c}; first nonzero order parameter at "
      f"gamma = {first_excited['gamma']:.4g}")

# curvature of the energy per atom: flat below, ~ -8 just above gamma_c
gammas = np.array([r["gamma"] for r in rows])
energy = np.array([r["energy_per_atom"] for r in rows])
h = gammas[1] - gammas[0]
curvature = np.diff(energy, 2) / h**2
i_c = np.searchsorted(gammas, gamma_c)
print(f"d2E/dgamma2 per atom just below gamma_c: {curvature[i_c - 3]:+.4f}")
print(f"d2E/dgamma2 per atom just above gamma_c: {curvature[i_c + 2]:+.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the plot")
else:
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    axes[0].plot(gammas, [r["photons_per_atom"] for r in rows], label="photons/atom")
    axes[0].plot(gammas, [r["excited_fraction"] for r in rows], label="excited fraction")
    axes[0].axvline(gamma_c, color="k", ls=":", lw=1)
    axes[0].set_xlabel(r"$\gamma$")
    axes[0].legend()
    axes[1].plot(gammas, energy)
    axes[1].axvline(gamma_c, color="k", ls=":", lw=1)
    axes[1].set_xlabel(r"$\gamma$")
    axes[1].set_ylabel("energy per atom")
    fig.tight_layout()
    fig.savefig(OUT / "phase_diagram.png", dpi=150)
    print(f"plot -> {OUT / 'phase_diagram.png'}")
