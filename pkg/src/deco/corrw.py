"""The (p0, p)-correlated random walk and walk position distributions.

A walker first steps right with probability ``p0`` (left with ``q0``) and
afterwards repeats its previous direction with probability ``p``.  The
squared weight of a quantum-walk path equals the probability of the same
path under this walk with ``p = |a|**2`` and ``p0 = |c alpha + d beta|**2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pathspace as ps
from .errors import DegenerateP
from .pathspace import InitialState, Path, QuantumCoin

FLUSH = 1e-300


@dataclass(frozen=True)
class CorrelatedRWParams:
    p0: float
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError(f"p0 must lie in [0, 1], got {self.p0}")
        if not 0.0 < self.p < 1.0:
            raise DegenerateP(f"p must lie in (0, 1), got {self.p}")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def q0(self) -> float:
        return 1.0 - self.p0

    @property
    def transition(self) -> np.ndarray:
        """Stochastic matrix ``[[p, q], [q, p]]`` (left component first)."""
        return np.array([[self.p, self.q], [self.q, self.p]])

    @property
    def initial(self) -> np.ndarray:
        return np.array([self.q0, self.p0])

    def step_operator(self, s: int) -> np.ndarray:
        """``e_s e_s^T M``: keep only the component moving in direction ``s``."""
        proj = np.zeros((2, 2))
        k = ps.chirality_index(s)
        proj[k, k] = 1.0
        return proj @ self.transition

    def initial_part(self, s: int) -> np.ndarray:
        out = np.zeros(2)
        k = ps.chirality_index(s)
        out[k] = self.initial[k]
        return out

    def with_first_step(self, s: int) -> CorrelatedRWParams:
        """Same persistence, first step forced in direction ``s``."""
        return CorrelatedRWParams(1.0 if s == 1 else 0.0, self.p)


def from_coin(coin: QuantumCoin, init: InitialState, eps: float = 1e-12) -> CorrelatedRWParams:
    ps.validate_coin(coin)
    ps.validate_state(init)
    p = abs(coin.a) ** 2
    p0 = abs(coin.c * init.alpha + coin.d * init.beta) ** 2
    q0 = abs(coin.a * init.alpha + coin.b * init.beta) ** 2
    if abs(q0 - (1 - p0)) > 1e-12:
        raise ValueError(f"q0={q0!r} inconsistent with 1-p0={1 - p0!r}")
    if not eps < p < 1 - eps:
        raise DegenerateP(f"p={p!r} is degenerate")
    return CorrelatedRWParams(min(max(p0, 0.0), 1.0), p)


def path_probability(params: CorrelatedRWParams, xi: Path) -> float:
    """``<1, P~_{xi_n} ... P~_{xi_2} phi_{xi_1}>``."""
    v = params.initial_part(xi.first)
    for s in xi.steps[1:]:
        v = params.step_operator(s) @ v
    return float(v.sum())


def path_probabilities(params: CorrelatedRWParams, steps: np.ndarray) -> np.ndarray:
    """Vectorized :func:`path_probability` over the rows of a path array."""
    steps = np.asarray(steps, dtype=np.int64)
    prob = np.where(steps[:, 0] == 1, params.p0, params.q0)
    if steps.shape[1] > 1:
        switches = (steps[:, 1:] != steps[:, :-1]).sum(axis=1)
        n1 = steps.shape[1] - 1
        prob = prob * params.p ** (n1 - switches) * params.q**switches
    return prob


@dataclass(frozen=True, eq=False)
class DirectionalDistribution:
    """``left[k]``/``right[k]``: mass at position ``-n + 2k`` having last stepped left/right."""

    n: int
    left: np.ndarray
    right: np.ndarray

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    @property
    def total(self) -> np.ndarray:
        return self.left + self.right

    def at(self, j: int) -> tuple[float, float]:
        if (j + self.n) % 2 or abs(j) > self.n:
            return 0.0, 0.0
        k = (j + self.n) // 2
        return float(self.left[k]), float(self.right[k])

    def as_dict(self) -> dict[int, tuple[float, float]]:
        return {int(j): (float(l), float(r)) for j, l, r in zip(self.positions, self.left, self.right)}


def evolve(params: CorrelatedRWParams, n: int) -> DirectionalDistribution:
    """Exact directional distribution at time ``n`` by dynamic programming.

    Arrays are indexed by ``k = (j + n) / 2``; O(n**2) time, O(n) memory.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p, q = params.p, params.q
    left = np.array([params.q0, 0.0])
    right = np.array([0.0, params.p0])
    for t in range(2, n + 1):
        new_left = np.zeros(t + 1)
        new_right = np.zeros(t + 1)
        new_left[:t] = p * left + q * right
        new_right[1:] = q * left + p * right
        new_left[new_left < FLUSH] = 0.0
        new_right[new_right < FLUSH] = 0.0
        left, right = new_left, new_right
    return DirectionalDistribution(n, left, right)


def endpoint_bias(params: CorrelatedRWParams, n: int) -> float:
    """``rho_L - rho_R = (p - q)**(n-1) * (q0 - p0)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (params.p - params.q) ** (n - 1) * (params.q0 - params.p0)


def endpoint_marginals(params: CorrelatedRWParams, n: int) -> tuple[float, float]:
    """Probabilities that the last step was left / right.

    ``rho_L = (1 + (p - q)**(n-1) * (q0 - p0)) / 2``; the sign follows from
    diagonalizing ``M`` against the initial vector ``[q0, p0]``.
    """
    delta = endpoint_bias(params, n)
    return 0.5 * (1 + delta), 0.5 * (1 - delta)


def shannon_entropy(probs) -> float:
    """``-sum P log2 P`` over strictly positive masses, in bits."""
    probs = np.asarray(probs, dtype=float)
    probs = probs[probs > 0]
    return float(-(probs * np.log2(probs)).sum())


def shannon_entropy_rw(params: CorrelatedRWParams, n: int) -> float:
    return shannon_entropy(evolve(params, n).total)


def qw_amplitudes(coin: QuantumCoin, init: InitialState, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chirality amplitudes at time ``n``, indexed like :class:`DirectionalDistribution`."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    u = coin.matrix
    left = np.array([init.alpha], dtype=complex)
    right = np.array([init.beta], dtype=complex)
    for t in range(1, n + 1):
        new_left = np.zeros(t + 1, dtype=complex)
        new_right = np.zeros(t + 1, dtype=complex)
        new_left[:t] = u[0, 0] * left + u[0, 1] * right
        new_right[1:] = u[1, 0] * left + u[1, 1] * right
        left, right = new_left, new_right
    return left, right


def qw_probabilities(coin: QuantumCoin, init: InitialState, n: int) -> np.ndarray:
    """Position probabilities at ``-n, -n+2, ..., n``."""
    ps.validate_coin(coin)
    ps.validate_state(init)
    left, right = qw_amplitudes(coin, init, n)
    return np.abs(left) ** 2 + np.abs(right) ** 2


def qw_distribution(coin: QuantumCoin, init: InitialState, n: int) -> dict[int, float]:
    probs = qw_probabilities(coin, init, n)
    return {int(j): float(v) for j, v in zip(range(-n, n + 1, 2), probs)}


def shannon_entropy_qw(coin: QuantumCoin, init: InitialState, n: int) -> float:
    return shannon_entropy(qw_probabilities(coin, init, n))
