"""Diffusive limit of the correlated walk.

After rescaling by sqrt(n) the walk position approaches a normal law with
variance p/q.  The Fourier transform of the directional distribution is an
exact matrix power, checked here against the dynamic program.
"""
import math

import numpy as np

from deco import asymptotics, corrw
from deco.corrw import CorrelatedRWParams

params = CorrelatedRWParams(p0=0.3, p=0.7)
print("     n   KS distance to N(0, p/q)")
for n in (10, 100, 1000, 10_000):
    print(f"{n:6d}   {asymptotics.gaussian_ks_distance(params, n):.5f}")

n = 2000
dist = corrw.evolve(params, n)
# p0 != 1/2 shifts the mean by O(1), visible as an O(j / n) relative tilt.
print(f"\npointwise at n={n} (position mass vs lattice Gaussian):")
for j in (0, 40, 80, 120):
    k = (j + n) // 2
    print(f"  j={j:4d}  {dist.total[k]:.6e}  {2 * asymptotics.lattice_gaussian(params, n, j):.6e}")

worst = max(
    float(np.max(np.abs(asymptotics.fourier_transform(corrw.evolve(params, m), xi)
                        - asymptotics.fourier_prediction(params, m, xi))))
    for m in (1, 10, 100) for xi in np.linspace(0, 2 * math.pi, 12)
)
print(f"\nFourier transform vs matrix power, max deviation {worst:.1e}")
_, (lp, lm) = asymptotics.fourier_symbol(params, 0.3)
print(f"symbol eigenvalues at xi=0.3: {lp:.6f}, {lm:.6f}")
