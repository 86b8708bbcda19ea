"""Dense decoherence matrices over the n-step path space."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import pathspace as ps
from .errors import NonRealMeasure, NTooLarge
from .pathspace import InitialState, PathOrdering, QuantumCoin, Restriction

ZERO_TOL = 1e-12
DEFAULT_MAX_N = 12


def dense_cap() -> int:
    """Dense-matrix cap on n; ``DECO_MAX_N`` overrides the default of 12."""
    return int(os.environ.get("DECO_MAX_N", DEFAULT_MAX_N))


def _check_dense_n(n: int, cap: int | None = None) -> None:
    cap = dense_cap() if cap is None else cap
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise NTooLarge(f"n={n} exceeds the dense cap {cap}")


@dataclass(frozen=True, eq=False)
class DecoherenceMatrix:
    n: int
    ordering: PathOrdering
    kind: Restriction
    entries: np.ndarray
    steps: np.ndarray
    coin: QuantumCoin | None = None
    init: InitialState | None = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def paths(self) -> list[ps.Path]:
        return [ps.Path(tuple(r)) for r in self.steps.tolist()]

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def weight_vectors(coin: QuantumCoin, init: InitialState, steps: np.ndarray) -> np.ndarray:
    """Two-component weight of every path row, shape ``(len(steps), 2)``."""
    amp = ps.path_amplitudes(coin, init, steps)
    w = np.zeros((len(steps), 2), dtype=complex)
    w[np.arange(len(steps)), (steps[:, -1].astype(np.int64) + 1) // 2] = amp
    return w


def restriction_mask(kind: Restriction, steps: np.ndarray) -> np.ndarray:
    """Boolean indicator of the restriction subset over all path pairs."""
    if kind.kind is ps.Kind.FULL:
        return np.ones((len(steps), len(steps)), dtype=bool)
    codes = ps.class_codes(kind, steps)
    return (codes[:, None] == codes[None, :]) & (codes[:, None] >= 0)


def build_matrix(
    coin: QuantumCoin,
    init: InitialState,
    n: int,
    kind: Restriction = ps.A0,
    ordering: PathOrdering = PathOrdering.PAPER,
    max_n: int | None = None,
) -> DecoherenceMatrix:
    """``D_A(xi, eta) = 1[(xi, eta) in A] * <w(xi), w(eta)>``.

    The inner product is conjugate-linear in its second argument.
    """
    _check_dense_n(n, max_n)
    ps.validate_coin(coin)
    ps.validate_state(init)
    ordering = PathOrdering(ordering)
    steps = ps.path_array(n, ordering)
    w = weight_vectors(coin, init, steps)
    entries = w[:, 0, None] * w[:, 0].conj() + w[:, 1, None] * w[:, 1].conj()
    entries[~restriction_mask(kind, steps)] = 0
    entries.setflags(write=False)
    return DecoherenceMatrix(n, ordering, kind, entries, steps, coin, init)


def two_site_matrix(n: int, ordering: PathOrdering = PathOrdering.PAPER) -> DecoherenceMatrix:
    """Decoherence matrix of the two-site walk built from hop amplitudes.

    Each step contributes ``i**|alpha_{k-1} - alpha_k| / sqrt(2)``; both
    trajectories start on the left site, and the second trajectory enters
    conjugated.
    """
    _check_dense_n(n)
    ordering = PathOrdering(ordering)
    steps = ps.path_array(n, ordering)
    sites = np.concatenate([np.full((len(steps), 1), -1, dtype=np.int64), steps.astype(np.int64)], axis=1)
    hops = np.abs(np.diff(sites, axis=1)) // 2
    factor = np.array([1 / math.sqrt(2), 1j / math.sqrt(2)])
    amp = np.ones(len(steps), dtype=complex)
    for k in range(n):
        amp = amp * factor[hops[:, k]]
    same_end = sites[:, -1][:, None] == sites[:, -1][None, :]
    entries = np.where(same_end, np.outer(amp, amp.conj()), 0)
    entries.setflags(write=False)
    return DecoherenceMatrix(
        n, ordering, ps.A0, entries, steps, ps.QuantumCoin.gudder_sorkin(), ps.InitialState.left()
    )


def qmeasure(d: DecoherenceMatrix, event: Iterable[int]) -> float:
    """``sum_{j,k in E} D(j, k)`` for an event given as distinct path indices."""
    idx = np.asarray(list(event), dtype=np.int64)
    if idx.size and (len(np.unique(idx)) != idx.size or idx.min() < 0 or idx.max() >= d.dim):
        raise ValueError("event indices must be distinct and in range")
    total = complex(d.entries[np.ix_(idx, idx)].sum())
    if abs(total.imag) > 1e-10:
        raise NonRealMeasure(f"imaginary part {total.imag:.3g}")
    return total.real


def qw_distribution_from_blocks(coin: QuantumCoin, init: InitialState, n: int) -> dict[int, float]:
    """Walk position distribution as q-measures of the endpoint blocks.

    ``D_AP`` restricted to the paths ending at ``x`` is exactly the block
    ``D_{AP^(n,x)}``, so the whole-event measure of that block is read off
    one dense ``D_AP``.
    """
    d = build_matrix(coin, init, n, ps.AP)
    pos = d.steps.sum(axis=1)
    return {x: qmeasure(d, np.flatnonzero(pos == x)) for x in range(-n, n + 1, 2)}


def zero_pattern(d: DecoherenceMatrix, tol: float = ZERO_TOL) -> np.ndarray:
    return np.abs(d.entries) <= tol


def precedes(
    kind_a: Restriction,
    kind_b: Restriction,
    coin: QuantumCoin,
    init: InitialState,
    n: int,
    tol: float = ZERO_TOL,
) -> bool:
    """``A < B``: every pair where ``D_B`` vanishes also has ``D_A`` vanish."""
    _check_dense_n(n, 10)
    za = zero_pattern(build_matrix(coin, init, n, kind_a), tol)
    zb = zero_pattern(build_matrix(coin, init, n, kind_b), tol)
    return bool(np.all(za[zb]))


def equivalent(kind_a, kind_b, coin, init, n, tol: float = ZERO_TOL) -> bool:
    return precedes(kind_a, kind_b, coin, init, n, tol) and precedes(kind_b, kind_a, coin, init, n, tol)


def class_sorted_order(d: DecoherenceMatrix) -> np.ndarray:
    """Permutation that groups paths by restriction class (stable within a class)."""
    codes = ps.class_codes(d.kind, d.steps)
    return np.argsort(codes, kind="stable")


def permuted(d: DecoherenceMatrix, order: np.ndarray) -> np.ndarray:
    return d.entries[np.ix_(order, order)]
