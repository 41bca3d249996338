"""Uncertainty corrections that restore the deterministic relations.

A coherent state of energy E oscillates with an amplitude A that obeys
E = k A^2 / 2 + hbar w / 2 rather than the classical E = k A^2 / 2.  The
same half quantum appears in the two-mode intensity I = hbar (N + 1) / 2.
"""
from arrivalaction import uncertainty
from arrivalaction.harmonic import DEFAULT_CONFIG as cfg

print("E      <H> (Fock)   k A^2/2 + hbar w/2   k A^2/2")
for n_mean in (1.0, 4.0, 16.0):
    E = cfg.quantum * (n_mean + 0.5)
    E_meas, A = uncertainty.fock_coherent_expectations(E, cfg)
    print(f"{E:5.1f}  {E_meas:10.6f}   {uncertainty.ho_energy_from_amplitude(A, cfg):18.6f}"
          f"   {0.5 * cfg.k * A * A:8.4f}")

E = 3.0
b = uncertainty.coherent_budget(E, cfg)
measured = uncertainty.ho_expectation_forward(0.0, E, b, cfg)
print(f"\ncoherent budget at E = {E}: dE = {b.delta_E:.4f}, dt = {b.delta_t:.4f}, product {b.product:.4f}")
print(f"measured amplitude {measured:.6f}, corrected {uncertainty.ho_correct(measured, 0.0, E, b, cfg):.6f}, "
      f"deterministic {uncertainty.ho_amplitude(E, cfg):.6f}")

for N in (2, 12, 40):
    print(f"N = {N}: A_max = {N / 2}, I = {uncertainty.intensity_calibration(N / 2)}")
J1, A = uncertainty.spin_coherent_fringe(12, 1.0)
I = uncertainty.intensity_calibration(6.0)
print(f"N = 12 fringe: J1^2 + A^2 = {J1 * J1 + A * A:.6f}, (I - 1/2)^2 = {(I - 0.5) ** 2:.6f}")
