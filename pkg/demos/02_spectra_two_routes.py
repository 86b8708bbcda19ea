"""Two independent routes to the same spectrum.

The dense route diagonalizes D_A with cyclic Jacobi rotations.  The closed
route never builds a matrix: every restriction class contributes the
correlated-walk probabilities of (class, final step) as its only nonzero
eigenvalues.
"""
import time

import numpy as np

from deco import corrw, decoherence, spectra
from deco import pathspace as ps

rng = np.random.default_rng(7)
coin, init = ps.random_coin(rng), ps.random_state(rng)
params = corrw.from_coin(coin, init)
print(f"random coin with p = {params.p:.4f}, first-step p0 = {params.p0:.4f}\n")

print(" n  kind  nonzero  dense-vs-closed   S (bits)   dense time")
for n in (4, 7, 10):
    for kind in (ps.A0, ps.AP, ps.B, ps.A1):
        t0 = time.perf_counter()
        oracle = spectra.hermitian_eigenvalues(decoherence.build_matrix(coin, init, n, kind))
        dt = time.perf_counter() - t0
        closed = spectra.closed_form_spectrum(params, n, kind)
        _, dev = spectra.spectrum_match(oracle, closed)
        s = spectra.exact_entropy(params, n, kind).value
        print(f"{n:2d}  {str(kind):4s}  {closed.nonzero_count:7d}  {dev:15.1e}  {s:9.5f}   {dt:8.3f}s")

# Beyond the dense cap only the closed form is available.
for n in (100, 10_000):
    s = spectra.closed_form_spectrum(params, n, ps.A1)
    print(f"\nn={n}: A1 spectrum has 2^{n} nonzero eigenvalues in {len(s.values)} distinct values;"
          f" entropy {spectra.von_neumann_entropy(s).value:.4f} bits")
