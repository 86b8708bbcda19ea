"""Spectra and von Neumann entropies of decoherence matrices.

Two independent routes: the dense Jacobi oracle applied to a built matrix,
and the closed form in which every restriction class contributes the
correlated-walk probabilities of (class, final step) as its only nonzero
eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import corrw
from . import pathspace as ps
from .corrw import CorrelatedRWParams
from .errors import DecoError, NotNormalized, NTooLarge, SizeMismatch, UnsupportedKind
from .jacobi import jacobi_eigenvalues
from .pathspace import Kind, Restriction

NEG_CLIP = 1e-9
ORACLE_CUTOFF = 1e-12
EXACT_BINOMIAL_N = 50
MAX_DENSE_DIM = 2**20


class NegativeEigenvalue(DecoError):
    pass


def _log2(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, -np.inf)
    np.log2(x, out=out, where=x > 0)
    return out


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalue multiset: ``values`` with ``multiplicities`` plus ``zero_count`` zeros.

    Log-space copies carry the closed forms for large ``n`` where the
    values underflow or the multiplicities overflow.
    """

    values: np.ndarray
    multiplicities: np.ndarray
    zero_count: int
    source: str
    log2_values: np.ndarray = field(default=None)
    log2_multiplicities: np.ndarray = field(default=None)
    dim: int | None = None

    def __post_init__(self):
        if self.log2_values is None:
            object.__setattr__(self, "log2_values", _log2(self.values))
        if self.log2_multiplicities is None:
            object.__setattr__(self, "log2_multiplicities", _log2(np.asarray(self.multiplicities, dtype=float)))

    @property
    def dimension(self) -> int:
        if self.dim is not None:
            return self.dim
        return int(sum(int(m) for m in self.multiplicities)) + self.zero_count

    @property
    def nonzero_count(self) -> int:
        pos = self.values > 0
        return int(sum(int(m) for m in np.asarray(self.multiplicities)[pos]))

    def weights(self) -> np.ndarray:
        """``multiplicity * value`` per entry, evaluated in log space."""
        return np.exp2(self.log2_multiplicities + self.log2_values)

    def total(self) -> float:
        return float(self.weights().sum())

    def dense(self) -> np.ndarray:
        """All eigenvalues, descending, zeros included."""
        if self.dimension > MAX_DENSE_DIM:
            raise NTooLarge(f"dimension {self.dimension} too large to expand")
        vals = np.repeat(self.values, np.asarray(self.multiplicities, dtype=np.int64))
        out = np.concatenate([vals, np.zeros(self.zero_count)])
        return np.sort(out)[::-1]


@dataclass(frozen=True)
class EntropyReport:
    value: float
    n: int | None = None
    kind: str | None = None
    params: CorrelatedRWParams | None = None
    method: str = "closed-form"


def _clip(values: np.ndarray) -> np.ndarray:
    if values.size and values.min() < -NEG_CLIP:
        raise NegativeEigenvalue(f"eigenvalue {values.min():.3g} below {-NEG_CLIP}")
    return np.where(values < 0, 0.0, values)


def hermitian_eigenvalues(matrix, tol: float = 1e-10, max_dim: int = 1024) -> Spectrum:
    """Oracle spectrum of a positive semidefinite Hermitian matrix via Jacobi."""
    entries = getattr(matrix, "entries", matrix)
    entries = np.asarray(entries)
    if entries.shape[0] > max_dim:
        raise NTooLarge(f"dimension {entries.shape[0]} exceeds oracle cap {max_dim}")
    values, _ = jacobi_eigenvalues(entries, tol=tol)
    values = _clip(values)
    return Spectrum(values, np.ones(values.size, dtype=np.int64), 0, "oracle")


def _from_masses(masses: np.ndarray, n: int) -> Spectrum:
    masses = np.asarray(masses, dtype=float)
    masses = np.sort(masses[masses > 0])[::-1]
    return Spectrum(masses, np.ones(masses.size, dtype=np.int64), 2**n - masses.size, "closed-form", dim=2**n)


def _a1_spectrum(params: CorrelatedRWParams, n: int) -> Spectrum:
    j = np.arange(n)
    if n <= EXACT_BINOMIAL_N:
        mult = np.array([math.comb(n - 1, int(k)) for k in j], dtype=np.int64)
        log2_mult = np.log2(mult.astype(float))
    else:
        lg = np.array([math.lgamma(n) - math.lgamma(k + 1) - math.lgamma(n - k) for k in j])
        log2_mult = lg / math.log(2)
        with np.errstate(over="ignore"):
            mult = np.exp2(log2_mult)
    base = (n - 1 - j) * math.log2(params.p) + j * math.log2(params.q)
    logs, mults, log_mults = [], [], []
    for start in (params.p0, params.q0):
        if start > 0:
            logs.append(math.log2(start) + base)
            mults.append(mult)
            log_mults.append(log2_mult)
    log2_values = np.concatenate(logs)
    order = np.argsort(-log2_values, kind="stable")
    log2_values = log2_values[order]
    multiplicities = np.concatenate(mults)[order]
    log2_multiplicities = np.concatenate(log_mults)[order]
    zero_count = 2**n - len(logs) * 2 ** (n - 1)
    return Spectrum(
        np.exp2(log2_values), multiplicities, zero_count, "closed-form", log2_values, log2_multiplicities, 2**n
    )


def _b_masses(params: CorrelatedRWParams, n: int) -> np.ndarray:
    parts = []
    for s, weight in ((-1, params.q0), (1, params.p0)):
        if weight > 0:
            dist = corrw.evolve(params.with_first_step(s), n)
            parts += [weight * dist.left, weight * dist.right]
    return np.concatenate(parts)


def _custom_masses(params: CorrelatedRWParams, n: int, kind: Restriction) -> np.ndarray:
    steps = ps.path_array(n, ps.PathOrdering.BINARY)
    probs = corrw.path_probabilities(params, steps)
    codes = ps.class_codes(kind, steps)
    inside = codes >= 0
    cell = 2 * codes[inside] + (steps[inside, -1] + 1) // 2
    return np.bincount(cell, weights=probs[inside])


def closed_form_spectrum(params: CorrelatedRWParams, n: int, kind: Restriction) -> Spectrum:
    """Nonzero eigenvalues ``P(class, final step)`` per restriction class."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = kind.kind
    if k in (Kind.FULL, Kind.A0):
        return _from_masses(np.array(corrw.endpoint_marginals(params, n)), n)
    if k is Kind.AP:
        dist = corrw.evolve(params, n)
        return _from_masses(np.concatenate([dist.left, dist.right]), n)
    if k is Kind.APX:
        kind.check(n)
        return _from_masses(np.array(corrw.evolve(params, n).at(kind.x)), n)
    if k is Kind.A1:
        return _a1_spectrum(params, n)
    if k is Kind.B:
        return _from_masses(_b_masses(params, n), n)
    if k is Kind.CUSTOM:
        return _from_masses(_custom_masses(params, n, kind), n)
    raise UnsupportedKind(str(kind))


def von_neumann_entropy(spectrum: Spectrum, n=None, kind=None, params=None, cutoff: float = ORACLE_CUTOFF) -> EntropyReport:
    """``-sum lambda log2 lambda`` in bits, with ``0 log 0 = 0``.

    Oracle spectra drop eigenvalues at or below ``cutoff`` (roundoff);
    closed-form values are exact and kept down to underflow.
    """
    total = spectrum.total()
    if abs(total - 1) > 1e-9:
        raise NotNormalized(f"spectrum sums to {total!r}")
    logv = spectrum.log2_values
    keep = np.isfinite(logv)
    if spectrum.source == "oracle":
        keep &= spectrum.values > cutoff
    w = spectrum.weights()[keep]
    value = float(-(w * logv[keep]).sum())
    method = "spectral" if spectrum.source == "oracle" else "closed-form"
    return EntropyReport(max(value, 0.0), n, None if kind is None else str(kind), params, method)


def binary_entropy(x: float) -> float:
    return corrw.shannon_entropy([x, 1 - x])


def exact_entropy_A0(params: CorrelatedRWParams, n: int) -> EntropyReport:
    rho_l, rho_r = corrw.endpoint_marginals(params, n)
    return EntropyReport(corrw.shannon_entropy([rho_l, rho_r]), n, "a0", params)


def entropy_deficit_A0(params: CorrelatedRWParams, n: int) -> float:
    """``1 - S_A0`` without cancellation.

    With ``rho = (1 +- delta) / 2`` the deficit is
    ``(delta * atanh(delta) + log1p(-delta**2) / 2) / ln 2``.
    """
    delta = abs(corrw.endpoint_bias(params, n))
    if delta == 1:
        return 1.0
    return (delta * math.atanh(delta) + 0.5 * math.log1p(-delta * delta)) / math.log(2)


def exact_entropy_AP(params: CorrelatedRWParams, n: int) -> EntropyReport:
    dist = corrw.evolve(params, n)
    value = corrw.shannon_entropy(dist.left) + corrw.shannon_entropy(dist.right)
    return EntropyReport(value, n, "ap", params)


def exact_entropy_B(params: CorrelatedRWParams, n: int) -> EntropyReport:
    return EntropyReport(corrw.shannon_entropy(_b_masses(params, n)), n, "b", params)


def b_decomposition(params: CorrelatedRWParams, n: int) -> float:
    """``c0 + q0 S_AP(left start) + p0 S_AP(right start)``."""
    value = binary_entropy(params.p0)
    for s, weight in ((-1, params.q0), (1, params.p0)):
        if weight > 0:
            value += weight * exact_entropy_AP(params.with_first_step(s), n).value
    return value


def exact_entropy_A1(params: CorrelatedRWParams, n: int) -> EntropyReport:
    """``(n - 1) H(p) + H(p0)`` with ``H`` the binary entropy."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return EntropyReport((n - 1) * binary_entropy(params.p) + binary_entropy(params.p0), n, "a1", params)


def exact_entropy(params: CorrelatedRWParams, n: int, kind: Restriction) -> EntropyReport:
    k = kind.kind
    if k in (Kind.FULL, Kind.A0):
        return exact_entropy_A0(params, n)
    if k is Kind.AP:
        return exact_entropy_AP(params, n)
    if k is Kind.A1:
        return exact_entropy_A1(params, n)
    if k is Kind.B:
        return exact_entropy_B(params, n)
    report = von_neumann_entropy(closed_form_spectrum(params, n, kind), n, kind, params)
    return report


def spectrum_match(s1: Spectrum, s2: Spectrum, tol: float = 1e-9) -> tuple[bool, float]:
    """Compare two spectra as sorted multisets; returns (match, max deviation)."""
    if s1.dimension != s2.dimension:
        raise SizeMismatch(f"dimensions {s1.dimension} and {s2.dimension}")
    a = _clip(s1.dense())
    b = _clip(s2.dense())
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    return dev <= tol, dev
