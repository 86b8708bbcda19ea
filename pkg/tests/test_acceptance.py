"""Acceptance criteria, each run at its stated tolerance and runtime budget.

Every criterion prints one ``[PASS]`` / ``[FAIL]`` line (shown in the
pytest terminal summary, or on stdout when this file is run as a script).
"""
import math
import sys
import time

import numpy as np
import pytest

from deco import asymptotics, corrw, decoherence, spectra, verify
from deco import pathspace as ps
from deco.corrw import CorrelatedRWParams

S = 1 / math.sqrt(2)
HADAMARD = ps.QuantumCoin.hadamard()
PHI0 = ps.InitialState(S, 1j * S)
P37 = CorrelatedRWParams(0.3, 0.7)
P57 = CorrelatedRWParams(0.5, 0.7)
GAUSS = 0.5 * math.log2(2 * math.pi * math.e)

I = 1j
A0_NUM = [
    [1, I, 1, 0, -I, 0, 0, 0],
    [-I, 1, -I, 0, -1, 0, 0, 0],
    [1, I, 1, 0, -I, 0, 0, 0],
    [0, 0, 0, 1, 0, I, -1, I],
    [I, -1, I, 0, 1, 0, 0, 0],
    [0, 0, 0, -I, 0, 1, I, 1],
    [0, 0, 0, -1, 0, -I, 1, -I],
    [0, 0, 0, -I, 0, 1, I, 1],
]
AP_NUM = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, -I, 0, 0, 0, 0, 0],
    [0, I, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, I, 0],
    [0, 0, 0, 0, 0, -I, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
]

LINES: list[str] = []


def hadamard_params():
    return corrw.from_coin(HADAMARD, PHI0)


def coins(count, seed):
    rng = np.random.default_rng(seed)
    return [(ps.random_coin(rng), ps.random_state(rng)) for _ in range(count)]


def judge(number, title, budget, fn):
    """Run ``fn() -> (ok, detail)`` against its runtime budget and record one line."""
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    in_time = elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.2f}s of {budget:g}s" + ("" if in_time else " (over budget)")
    line = f"[{status}] criterion {number:2d} {title}: {detail} [{timing}]"
    LINES.append(line)
    print(line)
    return ok and in_time, line


def c01_golden():
    refs = {ps.A0: np.array(A0_NUM) / 8, ps.AP: np.array(AP_NUM) / 8, ps.A1: np.eye(8) / 8}
    dev = max(
        float(np.max(np.abs(decoherence.build_matrix(HADAMARD, PHI0, 3, k).entries - m))) for k, m in refs.items()
    )
    return dev <= 1e-12, f"max deviation {dev:.2e} (tol 1e-12)"


def c02_two_site():
    gs, left = ps.QuantumCoin.gudder_sorkin(), ps.InitialState.left()
    dev = max(
        float(np.max(np.abs(decoherence.two_site_matrix(n).entries - decoherence.build_matrix(gs, left, n, ps.A0).entries)))
        for n in range(1, 9)
    )
    return dev <= 1e-12, f"n=1..8 max deviation {dev:.2e} (tol 1e-12)"


def c03_diagonal():
    worst = 0.0
    for coin, init in coins(200, 3):
        params = corrw.from_coin(coin, init)
        for n in range(1, 11):
            d = decoherence.build_matrix(coin, init, n, ps.A1)
            prob = corrw.path_probabilities(params, d.steps)
            worst = max(worst, float(np.max(np.abs(d.entries.diagonal() - prob))))
    return worst <= 1e-12, f"200 coins, n<=10, max |D(xi,xi) - P(xi)| = {worst:.2e}"


def c04_oracle():
    worst, bad = 0.0, []
    for coin, init in coins(50, 4):
        params = corrw.from_coin(coin, init)
        for n in range(2, 11):
            for kind in (ps.A0, ps.AP, ps.A1, ps.B):
                oracle = spectra.hermitian_eigenvalues(decoherence.build_matrix(coin, init, n, kind))
                ok, dev = spectra.spectrum_match(oracle, spectra.closed_form_spectrum(params, n, kind), 1e-9)
                worst = max(worst, dev)
                if not ok:
                    bad.append((str(kind), n))
    return not bad, f"1800 spectra, max deviation {worst:.2e}, mismatches {bad[:3]}"


def c05_qw():
    worst, mass = 0.0, 0.0
    for coin, init in coins(20, 5) + [(HADAMARD, PHI0)]:
        for n in range(1, 11):
            blocks = decoherence.qw_distribution_from_blocks(coin, init, n)
            direct = corrw.qw_distribution(coin, init, n)
            worst = max(worst, max(abs(blocks[x] - direct[x]) for x in direct))
            mass = max(mass, abs(sum(blocks.values()) - 1))
    h2 = decoherence.qw_distribution_from_blocks(HADAMARD, PHI0, 2)
    h2_dev = max(abs(h2[-2] - 0.25), abs(h2[0] - 0.5), abs(h2[2] - 0.25))
    ok = worst <= 1e-12 and mass <= 1e-12 and h2_dev <= 1e-12
    return ok, f"block vs amplitude {worst:.2e}, mass defect {mass:.2e}, Hadamard n=2 {h2_dev:.2e}"


def c06_first_orders():
    s_a0 = spectra.exact_entropy_A0(P37, 50).value
    n = 10_000
    ap_ratio = spectra.exact_entropy_AP(P37, n).value / (0.5 * math.log2(n))
    c = -(P37.p * math.log2(P37.p) + P37.q * math.log2(P37.q))
    a1_ratio = spectra.exact_entropy_A1(P37, n).value / (c * n)
    parts = [abs(s_a0 - 1) <= 1e-6, abs(ap_ratio - 1) <= 0.05, abs(a1_ratio - 1) <= 1e-3]
    detail = (
        f"|S_A0(50)-1|={abs(s_a0 - 1):.2e} ({'ok' if parts[0] else 'off'}), "
        f"S_AP/log2sqrt(n)={ap_ratio:.4f} ({'ok' if parts[1] else 'off'}, tol 0.05), "
        f"S_A1/(cn)={a1_ratio:.6f} ({'ok' if parts[2] else 'off'})"
    )
    return all(parts), detail


def c07_ap_second_order():
    n = 10_000
    out, ok = [], True
    for name, params in (("Hadamard", hadamard_params()), ("(0.5,0.7)", P57)):
        gap = spectra.exact_entropy_AP(params, n).value - 0.5 * math.log2(n)
        target = 1 + 0.5 * math.log2(params.p / params.q) + GAUSS
        ok &= abs(gap - target) <= 0.02
        out.append(f"{name} {gap:.4f} vs {target:.4f}")
    return ok, "S_AP - log2sqrt(n) at n=1e4: " + "; ".join(out) + " (tol 0.02)"


def c08_rederived_constants():
    a0_first, a0 = asymptotics.theorem1_sequences(ps.A0, P37, list(range(20, 41, 5)))
    want_a0 = 0.5 * (P37.p0 - P37.q0) ** 2 * (P37.p - P37.q) ** -2 * math.log2(math.e)
    a0_ok = a0.stabilized and abs(-a0.estimated - want_a0) <= 1e-6 * want_a0
    c = spectra.binary_entropy(P37.p)
    c0 = spectra.binary_entropy(P37.p0)
    a1_dev = max(
        abs((spectra.exact_entropy_A1(P37, n).value - c * n) / c - (c0 - c) / c) for n in list(range(1, 200)) + [10_000]
    )
    a1_ok = a1_dev <= 1e-9
    sections = {s.name: s for s in verify.run(verify.VerifyConfig(random_coins=3, large_n=2000))}
    warn_ok = all(
        sections[name].status == verify.WARN
        and any(d.startswith("WARN ConstantMismatch") and claim in d for d in sections[name].details)
        for name, claim in (("A0 limits", "Thm1.1-second-order"), ("A1 limits", "Thm1.3-second-order"))
    )
    detail = (
        f"A0 constant {-a0.estimated:.7f} vs derived {want_a0:.7f} (stated {2 * want_a0:.7f}); "
        f"A1 (S-cn)/c - (c0-c)/c max {a1_dev:.1e}; verify warns: {warn_ok}"
    )
    return a0_ok and a1_ok and warn_ok, detail


def c09_walk_entropy():
    n = 10_000
    out, ok = [], True
    for name, params in (("Hadamard", hadamard_params()), ("(0.5,0.7)", P57)):
        gap = corrw.shannon_entropy_rw(params, n) - 0.5 * math.log2(n)
        target = 0.5 * math.log2(params.p / params.q) + GAUSS
        ok &= abs(gap - target) <= 0.02
        out.append(f"{name} {gap:.4f} vs {target:.4f}")
    return ok, "H_rw - log2sqrt(n) at n=1e4: " + "; ".join(out) + " (tol 0.02)"


def c10_b_subset():
    gap = asymptotics.b_minus_ap(P37, 10_000)
    c0 = spectra.binary_entropy(P37.p0)
    dev = max(abs(spectra.exact_entropy_B(P37, n).value - spectra.b_decomposition(P37, n)) for n in range(1, 1001))
    ok = abs(gap - c0) <= 0.02 and dev <= 1e-10
    return ok, f"S_B - S_AP = {gap:.5f} vs c0 = {c0:.5f}; decomposition n<=1000 max {dev:.1e}"


def c11_order():
    failures = []
    for coin, init in coins(10, 11):
        for n in range(1, 9):
            if not decoherence.precedes(ps.A1, ps.AP, coin, init, n):
                failures.append(("A1<AP", n))
            if not decoherence.precedes(ps.AP, ps.A0, coin, init, n):
                failures.append(("AP<A0", n))
            if not decoherence.equivalent(ps.A0, ps.FULL, coin, init, n):
                failures.append(("A0~Full", n))
    return not failures, f"10 coins, n<=8, failures {failures[:3]}"


def c12_monotone():
    counter = []
    for coin, init in coins(100, 12):
        params = corrw.from_coin(coin, init)
        for n in range(1, 13):
            s = [spectra.exact_entropy(params, n, k).value for k in (ps.A1, ps.B, ps.AP, ps.A0)]
            if not all(a >= b - 1e-12 for a, b in zip(s, s[1:])):
                counter.append((n, params, s))
    return not counter, f"1200 cases, counterexamples {len(counter)} {counter[:1]}"


def c13_gaussian():
    ks = asymptotics.gaussian_ks_distance(hadamard_params(), 10_000)
    worst = 0.0
    for params in (hadamard_params(), P37):
        for n in range(1, 201):
            dist = corrw.evolve(params, n)
            for xi in np.linspace(0, 2 * np.pi, 7, endpoint=False):
                pred = asymptotics.fourier_prediction(params, n, xi)
                worst = max(worst, float(np.max(np.abs(asymptotics.fourier_transform(dist, xi) - pred))))
    return ks < 0.01 and worst <= 1e-10, f"KS(n=1e4) = {ks:.5f} (< 0.01); DFT deviation n<=200 {worst:.1e}"


CRITERIA = [
    (1, "golden matrices", 1, c01_golden),
    (2, "two-site equivalence", 10, c02_two_site),
    (3, "diagonal equals walk path probability", 60, c03_diagonal),
    (4, "spectrum oracle equivalence", 600, c04_oracle),
    (5, "walk distribution from blocks", 60, c05_qw),
    (6, "first-order limits", 300, c06_first_orders),
    (7, "AP second-order constant", 300, c07_ap_second_order),
    (8, "second-order constants re-derived", 60, c08_rederived_constants),
    (9, "walk Shannon entropy constant", 60, c09_walk_entropy),
    (10, "B subset", 120, c10_b_subset),
    (11, "restriction order", 60, c11_order),
    (12, "monotonicity sweep", 300, c12_monotone),
    (13, "Gaussian and Fourier limits", 120, c13_gaussian),
]


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and LINES:
        reporter.write_sep("=", "acceptance criteria")
        for line in LINES:
            reporter.write_line(line)


@pytest.mark.parametrize("number,title,budget,fn", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, budget, fn):
    ok, line = judge(number, title, budget, fn)
    assert ok, line


if __name__ == "__main__":
    results = [judge(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
