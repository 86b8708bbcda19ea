"""Paths, coins, path weights and restriction subsets.

Conventions used throughout the package:

* A path stores its steps in time order ``(xi_1, ..., xi_n)``; it *displays*
  as ``(xi_n, ..., xi_1)``.
* Chirality basis: ``e_{-1} = [1, 0]`` (left), ``e_{+1} = [0, 1]`` (right).
  Array index of chirality ``s`` is ``(s + 1) // 2``.
* The binary index of a path is ``sum((xi_k + 1) / 2 * 2**(k - 1))``, so
  ``xi_1`` is the least significant bit.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import InvalidRestriction, LengthMismatch, NotNormalized, NotUnitary, NTooLarge, ZeroEntry

UNITARY_TOL = 1e-12
MAX_ENUM_N = 20

E_LEFT = np.array([1.0 + 0j, 0.0 + 0j])
E_RIGHT = np.array([0.0 + 0j, 1.0 + 0j])


def chirality_index(s: int) -> int:
    return (s + 1) // 2


@dataclass(frozen=True)
class QuantumCoin:
    """2x2 unitary ``[[a, b], [c, d]]`` driving the walk's chirality."""

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    @classmethod
    def hadamard(cls) -> QuantumCoin:
        s = 1 / math.sqrt(2)
        return cls(s, s, s, -s)

    @classmethod
    def gudder_sorkin(cls) -> QuantumCoin:
        s = 1 / math.sqrt(2)
        return cls(s, 1j * s, 1j * s, s)

    @classmethod
    def from_matrix(cls, m) -> QuantumCoin:
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @classmethod
    def from_angles(cls, theta: float, phi1: float = 0.0, phi2: float = 0.0, gamma: float = 0.0) -> QuantumCoin:
        """General U(2) element; ``|a|**2 = cos(theta)**2``."""
        g = cmath.exp(1j * gamma)
        ct, st = math.cos(theta), math.sin(theta)
        return cls(
            g * cmath.exp(1j * phi1) * ct,
            g * cmath.exp(1j * phi2) * st,
            -g * cmath.exp(-1j * phi2) * st,
            g * cmath.exp(-1j * phi1) * ct,
        )


@dataclass(frozen=True)
class InitialState:
    alpha: complex
    beta: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    @classmethod
    def left(cls) -> InitialState:
        return cls(1.0, 0.0)

    @classmethod
    def right(cls) -> InitialState:
        return cls(0.0, 1.0)


def validate_coin(coin: QuantumCoin, tol: float = UNITARY_TOL) -> QuantumCoin:
    """Return ``coin`` unchanged if it is unitary with four nonzero entries.

    Raises ZeroEntry when some ``|entry| <= tol`` and NotUnitary when a
    unitarity relation is violated by more than ``tol``.
    """
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    for name, v in zip("abcd", (a, b, c, d)):
        if abs(v) <= tol:
            raise ZeroEntry(f"coin entry {name} has modulus {abs(v):.3g}")
    checks = {
        "|a|^2+|c|^2=1": abs(abs(a) ** 2 + abs(c) ** 2 - 1),
        "|b|^2+|d|^2=1": abs(abs(b) ** 2 + abs(d) ** 2 - 1),
        "a*conj(b)+c*conj(d)=0": abs(a * b.conjugate() + c * d.conjugate()),
        "|a|^2=|d|^2": abs(abs(a) ** 2 - abs(d) ** 2),
        "|a|^2=1-|b|^2": abs(abs(a) ** 2 - 1 + abs(b) ** 2),
    }
    delta = coin.determinant
    checks["d=det*conj(a)"] = abs(d - delta * a.conjugate())
    checks["c=-det*conj(b)"] = abs(c + delta * b.conjugate())
    bad = {k: v for k, v in checks.items() if v > tol}
    if bad:
        raise NotUnitary(f"unitarity violated: {bad}")
    return coin


def validate_state(init: InitialState, tol: float = UNITARY_TOL) -> InitialState:
    norm2 = abs(init.alpha) ** 2 + abs(init.beta) ** 2
    if abs(norm2 - 1) > tol:
        raise NotNormalized(f"|alpha|^2+|beta|^2 = {norm2!r}")
    return init


def random_coin(rng: np.random.Generator, p_range=(0.05, 0.95)) -> QuantumCoin:
    """Random unitary coin with ``|a|**2`` uniform in ``p_range`` and random phases."""
    p = rng.uniform(*p_range)
    phases = rng.uniform(0, 2 * math.pi, size=3)
    return QuantumCoin.from_angles(math.acos(math.sqrt(p)), *phases)


def random_state(rng: np.random.Generator) -> InitialState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return InitialState(complex(v[0]), complex(v[1]))


@dataclass(frozen=True)
class Path:
    """An element of the n-step path space; ``steps[k-1]`` is ``xi_k``."""

    steps: tuple[int, ...]

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        if not steps:
            raise ValueError("a path needs at least one step")
        if any(s not in (-1, 1) for s in steps):
            raise ValueError(f"steps must be -1 or +1, got {steps}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def from_display(cls, display: Sequence[int]) -> Path:
        """Build from the display tuple ``(xi_n, ..., xi_1)``."""
        return cls(tuple(reversed(tuple(display))))

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def display(self) -> tuple[int, ...]:
        return tuple(reversed(self.steps))

    @property
    def first(self) -> int:
        return self.steps[0]

    @property
    def last(self) -> int:
        return self.steps[-1]

    @property
    def position(self) -> int:
        return sum(self.steps)

    @property
    def binary_index(self) -> int:
        return sum(((s + 1) // 2) << k for k, s in enumerate(self.steps))

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.display) + ")"


class PathOrdering(Enum):
    PAPER = "paper"
    BINARY = "binary"


def _check_enum_n(n: int, cap: int = MAX_ENUM_N) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise NTooLarge(f"n={n} exceeds the enumeration cap {cap}")


def path_indices(n: int, ordering: PathOrdering = PathOrdering.PAPER) -> np.ndarray:
    """Binary indices of all paths of length ``n`` listed in ``ordering``.

    Lexicographic order on the display tuple with -1 < +1 coincides with
    the binary index (``xi_n`` is the most significant bit), so the PAPER
    layout is a sort by (number of +1 steps, binary index).
    """
    _check_enum_n(n)
    idx = np.arange(2**n, dtype=np.int64)
    if PathOrdering(ordering) is PathOrdering.BINARY:
        return idx
    ones = np.zeros_like(idx)
    for k in range(n):
        ones += (idx >> k) & 1
    return idx[np.lexsort((idx, ones))]


def path_array(n: int, ordering: PathOrdering = PathOrdering.PAPER) -> np.ndarray:
    """Steps of every path as an int8 array of shape ``(2**n, n)``; column k is ``xi_{k+1}``."""
    idx = path_indices(n, ordering)
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1
    return (2 * bits - 1).astype(np.int8)


def enumerate_paths(n: int, ordering: PathOrdering = PathOrdering.PAPER) -> list[Path]:
    return [Path(tuple(row)) for row in path_array(n, ordering).tolist()]


def path_weight(coin: QuantumCoin, init: InitialState, xi: Path) -> np.ndarray:
    """Weight ``P_{xi_n} ... P_{xi_1} phi0`` with ``P_j = e_j e_j^dagger U``."""
    u = coin.matrix
    w = init.vector
    for s in xi.steps:
        e = E_RIGHT if s == 1 else E_LEFT
        w = np.outer(e, e.conj()) @ u @ w
    return w


def path_amplitudes(coin: QuantumCoin, init: InitialState, steps: np.ndarray) -> np.ndarray:
    """Nonzero component of the weight of every path in ``steps`` (vectorized).

    The weight of a path is ``amplitude * e_{xi_n}``.
    """
    u = coin.matrix
    chi = (np.asarray(steps, dtype=np.int64) + 1) // 2
    amp = (u @ init.vector)[chi[:, 0]]
    for k in range(1, chi.shape[1]):
        amp = amp * u[chi[:, k], chi[:, k - 1]]
    return amp


class Kind(Enum):
    FULL = "full"
    A0 = "a0"
    AP = "ap"
    APX = "apx"
    A1 = "a1"
    B = "b"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Restriction:
    """A restriction subset of path pairs.

    ``x`` is the fixed endpoint for ``APX``; ``label`` maps a :class:`Path`
    to a hashable class label for ``CUSTOM`` equivalence relations.
    """

    kind: Kind
    x: int | None = None
    label: Callable[[Path], Hashable] | None = field(default=None, compare=False)
    name: str | None = None

    def __str__(self) -> str:
        if self.kind is Kind.APX:
            return f"apx:{self.x}"
        if self.kind is Kind.CUSTOM:
            return self.name or "custom"
        return self.kind.value

    @property
    def is_equivalence(self) -> bool:
        return self.kind is not Kind.FULL

    def check(self, n: int) -> None:
        if self.kind is Kind.APX:
            if self.x is None or abs(self.x) > n or (self.x - n) % 2:
                raise InvalidRestriction(f"apx:{self.x} is not reachable in {n} steps")
        if self.kind is Kind.CUSTOM and self.label is None:
            raise InvalidRestriction("custom restriction needs a label function")

    @classmethod
    def parse(cls, text: str) -> Restriction:
        t = text.strip().lower()
        if t.startswith("apx:"):
            return APx(int(t[4:]))
        try:
            kind = Kind(t)
        except ValueError:
            raise InvalidRestriction(f"unknown restriction {text!r}") from None
        if kind in (Kind.APX, Kind.CUSTOM):
            raise InvalidRestriction(f"{text!r} needs parameters")
        return cls(kind)


FULL = Restriction(Kind.FULL)
A0 = Restriction(Kind.A0)
AP = Restriction(Kind.AP)
A1 = Restriction(Kind.A1)
B = Restriction(Kind.B)


def APx(x: int) -> Restriction:
    return Restriction(Kind.APX, x=int(x))


def custom(label: Callable[[Path], Hashable], name: str = "custom") -> Restriction:
    return Restriction(Kind.CUSTOM, label=label, name=name)


def restriction_contains(kind: Restriction, xi: Path, eta: Path) -> bool:
    if xi.n != eta.n:
        raise LengthMismatch(f"paths of length {xi.n} and {eta.n}")
    k = kind.kind
    if k is Kind.FULL:
        return True
    if k is Kind.A0:
        return xi.last == eta.last
    if k is Kind.AP:
        return xi.last == eta.last and xi.position == eta.position
    if k is Kind.APX:
        return xi.last == eta.last and xi.position == eta.position == kind.x
    if k is Kind.A1:
        return xi == eta
    if k is Kind.B:
        return xi.last == eta.last and xi.position == eta.position and xi.first == eta.first
    return kind.label(xi) == kind.label(eta)


def class_label(kind: Restriction, xi: Path) -> Hashable:
    """Canonical class of ``xi``.

    ``APX`` returns ``None`` for paths that do not end at ``x``: those paths
    are related to nothing, not even themselves.  ``FULL`` uses the ``A0``
    labels because cross-chirality weights are orthogonal.
    """
    k = kind.kind
    if k in (Kind.FULL, Kind.A0):
        return (xi.last,)
    if k is Kind.AP:
        return (xi.position, xi.last)
    if k is Kind.APX:
        return (kind.x, xi.last) if xi.position == kind.x else None
    if k is Kind.A1:
        return xi.steps
    if k is Kind.B:
        return (xi.position, xi.last, xi.first)
    return kind.label(xi)


def class_codes(kind: Restriction, steps: np.ndarray) -> np.ndarray:
    """Integer class code per path row; ``-1`` marks paths outside every class."""
    steps = np.asarray(steps, dtype=np.int64)
    n = steps.shape[1]
    kind.check(n)
    last = (steps[:, -1] + 1) // 2
    first = (steps[:, 0] + 1) // 2
    pos = steps.sum(axis=1) + n  # in [0, 2n]
    k = kind.kind
    if k in (Kind.FULL, Kind.A0):
        return last
    if k is Kind.AP:
        return 2 * pos + last
    if k is Kind.APX:
        return np.where(pos == kind.x + n, last, -1)
    if k is Kind.A1:
        return np.arange(len(steps))
    if k is Kind.B:
        return 4 * pos + 2 * last + first
    labels = [kind.label(Path(tuple(row))) for row in steps.tolist()]
    table: dict = {}
    return np.array([table.setdefault(lab, len(table)) for lab in labels], dtype=np.int64)
