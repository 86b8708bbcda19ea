"""Flat-file formats: matrices, spectra, distributions and convergence reports.

CSV floats use 17 significant digits; JSON floats use Python's shortest
round-trip representation.  Both are deterministic for identical inputs.
"""
from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .asymptotics import ConvergenceReport
from .corrw import DirectionalDistribution
from .decoherence import DecoherenceMatrix
from .pathspace import InitialState, QuantumCoin
from .spectra import Spectrum


def fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def coin_to_dict(coin: QuantumCoin) -> dict:
    return {k: _pair(getattr(coin, k)) for k in "abcd"}


def init_to_dict(init: InitialState) -> dict:
    return {"alpha": _pair(init.alpha), "beta": _pair(init.beta)}


def matrix_to_dict(d: DecoherenceMatrix) -> dict:
    return {
        "n": d.n,
        "ordering": d.ordering.value,
        "kind": str(d.kind),
        "coin": coin_to_dict(d.coin) if d.coin is not None else None,
        "init": init_to_dict(d.init) if d.init is not None else None,
        "paths": ["(" + ",".join(str(int(s)) for s in row[::-1]) + ")" for row in d.steps],
        "entries": [_pair(z) for z in d.entries.ravel()],
    }


def matrix_to_json(d: DecoherenceMatrix) -> str:
    return json.dumps(matrix_to_dict(d), indent=1) + "\n"


def matrix_to_csv(d: DecoherenceMatrix) -> str:
    """Nonzero entries as ``row,col,re,im`` with 1-based indices."""
    lines = ["row,col,re,im"]
    rows, cols = np.nonzero(d.entries)
    for r, c in zip(rows, cols):
        z = d.entries[r, c]
        lines.append(f"{r + 1},{c + 1},{fmt(z.real)},{fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def entries_from_dict(data: dict) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in data["entries"]])
    dim = 2 ** data["n"]
    return flat.reshape(dim, dim)


def load_matrix_json(text: str) -> tuple[dict, np.ndarray]:
    data = json.loads(text)
    return data, entries_from_dict(data)


def golden_matrix(kind: str, n: int = 3) -> tuple[dict, np.ndarray]:
    """Shipped reference matrices (Hadamard coin, ``phi0 = [1, i] / sqrt(2)``, default ordering)."""
    name = f"hadamard_n{n}_{kind.lower()}.json"
    text = resources.files("deco").joinpath(f"data/golden/{name}").read_text()
    return load_matrix_json(text)


def spectrum_to_dict(s: Spectrum, kind=None, n=None) -> dict:
    eig = []
    for v, m, lm in zip(s.values, s.multiplicities, s.log2_multiplicities):
        exact = isinstance(m, (int, np.integer)) or float(m).is_integer()
        eig.append({
            "value": float(v),
            "multiplicity": int(m) if exact and np.isfinite(float(m)) else None,
            "log2_multiplicity": float(lm),
        })
    if s.zero_count:
        eig.append({"value": 0.0, "multiplicity": int(s.zero_count), "log2_multiplicity": None})
    return {
        "kind": None if kind is None else str(kind),
        "n": n,
        "method": "spectral" if s.source == "oracle" else "closed-form",
        "eigenvalues": eig,
    }


def spectrum_to_json(s: Spectrum, kind=None, n=None) -> str:
    return json.dumps(spectrum_to_dict(s, kind, n), indent=1) + "\n"


def spectrum_to_csv(s: Spectrum) -> str:
    lines = ["value,multiplicity"]
    for v, m in zip(s.values, s.multiplicities):
        lines.append(f"{fmt(v)},{int(m) if np.isfinite(float(m)) else 'inf'}")
    if s.zero_count:
        lines.append(f"0,{s.zero_count}")
    return "\n".join(lines) + "\n"


def distribution_to_csv(dist: DirectionalDistribution) -> str:
    lines = ["n,j,pL,pR,total"]
    for j, l, r in zip(dist.positions, dist.left, dist.right):
        lines.append(f"{dist.n},{j},{fmt(l)},{fmt(r)},{fmt(l + r)}")
    return "\n".join(lines) + "\n"


def position_distribution_to_csv(n: int, probs: dict[int, float]) -> str:
    lines = ["n,j,probability"]
    for j in sorted(probs):
        lines.append(f"{n},{j},{fmt(probs[j])}")
    return "\n".join(lines) + "\n"


def reports_to_csv(reports: list[ConvergenceReport]) -> str:
    lines = ["claim,n,raw,scaled,predicted,estimated,verdict"]
    for r in reports:
        for n, raw, sc in zip(r.ns, r.raw, r.scaled):
            lines.append(
                f"{r.claim},{n},{fmt(raw)},{fmt(sc)},{fmt(r.predicted)},{fmt(r.estimated)},{r.verdict.value}"
            )
    return "\n".join(lines) + "\n"


def report_to_dict(r: ConvergenceReport) -> dict:
    return {
        "claim": r.claim,
        "n": [int(n) for n in r.ns],
        "scaled": [float(x) for x in r.scaled],
        "predicted": r.predicted,
        "derived": r.derived,
        "estimated": r.estimated,
        "tolerance": r.tolerance,
        "verdict": r.verdict.value,
        "notes": r.notes,
    }


def reports_to_json(reports: list[ConvergenceReport]) -> str:
    return json.dumps([report_to_dict(r) for r in reports], indent=1) + "\n"
