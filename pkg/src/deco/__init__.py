"""Decoherence matrices, spectra and entropy scaling for one-dimensional quantum walks."""
from .corrw import CorrelatedRWParams, evolve, from_coin
from .decoherence import DecoherenceMatrix, build_matrix, two_site_matrix
from .errors import DecoError
from .pathspace import (
    A0,
    A1,
    AP,
    B,
    FULL,
    APx,
    InitialState,
    Path,
    PathOrdering,
    QuantumCoin,
    Restriction,
)
from .spectra import Spectrum, closed_form_spectrum, exact_entropy, hermitian_eigenvalues, von_neumann_entropy

__version__ = "0.1.0"

__all__ = [
    "A0", "A1", "AP", "APx", "B", "FULL",
    "CorrelatedRWParams", "DecoError", "DecoherenceMatrix", "InitialState", "Path",
    "PathOrdering", "QuantumCoin", "Restriction", "Spectrum",
    "build_matrix", "closed_form_spectrum", "evolve", "exact_entropy", "from_coin",
    "hermitian_eigenvalues", "two_site_matrix", "von_neumann_entropy",
]
