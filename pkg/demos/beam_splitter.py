"""N-photon statistics behind a 50:50 beam splitter.

Compares the semiclassical two-arrival-phase amplitudes with the exact
rotation matrix elements, shows the Hong-Ou-Mandel type suppressions and
the quality of the semiclassical matrix as a unitary.
"""
import numpy as np

from arrivalaction import twomode
from arrivalaction.specfun import beam_splitter_matrix_exact

for N, m1 in ((2, 0), (6, 1), (18, 3)):
    cfg = twomode.TwoModeConfig(N)
    print(f"N = {N}, m1 = {m1}")
    for m2 in twomode.lattice(N):
        p = twomode.probability(m2, m1, cfg)
        q = twomode.exact_probability(m2, m1, cfg)
        print(f"  m2 = {m2:+5.1f}  semiclassical {p:.4f}  exact {q:.4f}")

cfg = twomode.TwoModeConfig(12)
print("\nclosed form at a photon-number difference of two, N = 12")
for m1 in range(0, 7):
    print(f"  m1 = {m1}: {twomode.m2one_probability(m1, cfg):.4f}  "
          f"exact {twomode.exact_probability(1, m1, cfg):.4f}")

for rule in twomode.PATCH_RULES:
    M = twomode.amplitude_matrix(twomode.TwoModeConfig(18), patch=rule)
    dev = np.abs(M.T @ M - np.eye(19)).max()
    print(f"\nN = 18, patch rule {rule!r}: max |M^T M - 1| = {dev:.3f}")
X = beam_splitter_matrix_exact(18)
print(f"exact matrix: max |X^T X - 1| = {np.abs(X.T @ X - np.eye(19)).max():.1e}")
