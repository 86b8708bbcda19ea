"""Decoherence matrices of a three-step Hadamard walk.

Builds D_A for the restrictions A0 (same final step), AP (same endpoint
and final step) and A1 (diagonal), prints them as multiples of 1/8 and
reads the walk's position distribution off the endpoint blocks.
"""
import math

import numpy as np

from deco import corrw, decoherence
from deco import pathspace as ps

s = 1 / math.sqrt(2)
coin = ps.QuantumCoin.hadamard()
phi0 = ps.InitialState(s, 1j * s)

paths = ps.enumerate_paths(3)
print("paths (xi_3, xi_2, xi_1):", ", ".join(str(p) for p in paths))


def show(m):
    for row in np.round(8 * m, 12):
        print("  " + " ".join(f"{complex(z).real:+.0f}{complex(z).imag:+.0f}i" for z in row))


for kind in (ps.A0, ps.AP, ps.A1):
    d = decoherence.build_matrix(coin, phi0, 3, kind)
    print(f"\n8 * D_{kind}   (trace {d.trace.real:.3f})")
    show(d.entries)

# The diagonal is a classical path probability; the off-diagonal entries are
# interference terms.  Summing a whole endpoint block gives the quantum
# probability of that endpoint, which differs from the block's trace.
params = corrw.from_coin(coin, phi0)
print(f"\nwalk parameters: p = {params.p:.3f}, p0 = {params.p0:.3f}")
n = 6
blocks = decoherence.qw_distribution_from_blocks(coin, phi0, n)
classical = corrw.evolve(params, n).total
print(f"\n n={n}   x   quantum (block sum)   classical (block trace)")
for (x, q), c in zip(sorted(blocks.items()), classical):
    print(f"      {x:+3d}   {q:.6f}              {c:.6f}")
