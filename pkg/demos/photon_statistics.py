"""Photon-number statistics of a quadrature eigenstate |x>.

At x = 3 the distribution has interference minima spaced by four quanta;
for small x the even-n probabilities show a slow beat whose first minimum
gives an estimate of x.
"""
from arrivalaction import harmonic
from arrivalaction.specfun import ho_eigenfunction_exact

cfg = harmonic.DEFAULT_CONFIG

P = [harmonic.photon_probability(3.0, n, cfg) for n in range(41)]
Q = [ho_eigenfunction_exact(n, 3.0, cfg) ** 2 for n in range(41)]
minima = [n for n in range(1, 40) if P[n] < P[n - 1] and P[n] < P[n + 1]]
exact_minima = [n for n in range(1, 40) if Q[n] < Q[n - 1] and Q[n] < Q[n + 1]]
print("x = 3: semiclassical minima", minima)
print("       exact minima        ", exact_minima)

for E1 in (12.5, 9.5, 8.5):
    est = harmonic.estimate_x_from_minimum(E1, cfg)
    print(f"first even minimum near E = {E1}: x estimated as {est:.4f}")

x = 0.225
print(f"\nx = {x}: n, P_semiclassical, P_small_x, P_exact")
for n in range(0, 16, 2):
    print(f"{n:3d} {harmonic.photon_probability(x, n, cfg):10.5f} "
          f"{harmonic.small_x_parity_probability(n, x, cfg):10.5f} "
          f"{ho_eigenfunction_exact(n, x, cfg) ** 2:10.5f}")
