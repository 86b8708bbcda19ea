import math

import numpy as np
import pytest
from hypothesis import strategies as st

from deco import pathspace as ps

S = 1 / math.sqrt(2)


@pytest.fixture
def hadamard():
    return ps.QuantumCoin.hadamard()


@pytest.fixture
def phi0():
    return ps.InitialState(S, 1j * S)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pairs(count, seed):
    rng = np.random.default_rng(seed)
    return [(ps.random_coin(rng), ps.random_state(rng)) for _ in range(count)]


@st.composite
def coins(draw):
    """Random coins with every entry nonzero, via the angle parametrization."""
    theta = draw(st.floats(0.2, math.pi / 2 - 0.2))
    phis = [draw(st.floats(0, 2 * math.pi)) for _ in range(3)]
    return ps.QuantumCoin.from_angles(theta, *phis)


@st.composite
def states(draw):
    t = draw(st.floats(0, math.pi / 2))
    ph = draw(st.floats(0, 2 * math.pi))
    return ps.InitialState(math.cos(t), math.sin(t) * complex(math.cos(ph), math.sin(ph)))


@st.composite
def walk_params(draw):
    from deco.corrw import CorrelatedRWParams

    return CorrelatedRWParams(draw(st.floats(0, 1)), draw(st.floats(0.05, 0.95)))
