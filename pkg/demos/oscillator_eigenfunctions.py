"""Semiclassical oscillator eigenfunctions next to the exact Hermite functions.

Run with ``python3 demos/oscillator_eigenfunctions.py``.  Prints a coarse
table for n = 0, 1, 2 and the largest deviation in the separated-branch
region for each.
"""
import numpy as np

from arrivalaction import harmonic
from arrivalaction.core import Regime
from arrivalaction.specfun import ho_eigenfunction_exact

cfg = harmonic.DEFAULT_CONFIG
xs = np.linspace(-3.0, 3.0, 13)

for n in (0, 1, 2):
    print(f"n = {n}   E = {harmonic.energy_level(n, cfg):.3f}")
    print(f"{'x':>6} {'semiclassical':>14} {'exact':>10}  regime")
    for x in xs:
        sc = harmonic.wavefunction(n, x, cfg)
        ex = ho_eigenfunction_exact(n, x, cfg)
        reg = harmonic.wavefunction_regime(n, abs(x), cfg).value if x else "separated"
        print(f"{x:6.2f} {sc:14.5f} {ex:10.5f}  {reg}")
    grid = np.linspace(-4.0, 4.0, 1601)
    sep = np.array([x != 0 and harmonic.wavefunction_regime(n, abs(x), cfg) is Regime.SEPARATED_BRANCHES
                    for x in grid])
    err = np.abs(harmonic.wavefunction(n, grid, cfg) - ho_eigenfunction_exact(n, grid, cfg))
    print(f"max deviation where the branches are separated: {err[sep].max():.4f}\n")
