"""How the entropies grow with the number of steps.

S_A0 saturates at one bit, S_A1 grows linearly with slope H(p), and S_AP
and the walk's Shannon entropy grow like log2 sqrt(n).  The constant
offsets are compared with two candidate values: one computed for a walk
spread over every lattice site, and one for a walk that only ever visits
sites of a single parity (which is what actually happens).
"""
import math

from deco import asymptotics, corrw, spectra
from deco import pathspace as ps
from deco.corrw import CorrelatedRWParams

params = CorrelatedRWParams(p0=0.5, p=0.7)
pub = asymptotics.stated_constants(params)
der = asymptotics.derived_constants(params)

print("     n     S_A0     S_AP - L    H_rw - L    S_A1 / (H(p) n)")
c = spectra.binary_entropy(params.p)
for n in (10, 100, 1000, 10_000):
    lead = 0.5 * math.log2(n)
    print(f"{n:6d}  {spectra.exact_entropy_A0(params, n).value:.6f}  "
          f"{spectra.exact_entropy_AP(params, n).value - lead:10.5f}  "
          f"{corrw.shannon_entropy_rw(params, n) - lead:10.5f}  "
          f"{spectra.exact_entropy_A1(params, n).value / (c * n):12.6f}")
print("(L = log2 sqrt(n))")

print("\nconstant offsets        all sites   one parity class")
for key, label in (("Thm1.2-second-order", "S_AP - L"), ("Corollary-second-order", "H_rw - L")):
    print(f"  {label:20s}  {pub[key]:9.4f}   {der[key]:9.4f}")

print("\nconvergence reports:")
ns = [100, 1000, 10_000]
reports = asymptotics.theorem1_sequences(ps.AP, params, ns) + [asymptotics.corollary_sequence(params, ns)]
for r in reports:
    print(f"  {r.claim:24s} estimate {r.estimated:8.4f}  verdict {r.verdict.value}")
