"""Numerical rank and the rank-driven entanglement classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistentRanks, NonFiniteEntry, NotSeparable
from .state import PureState, make_state, phase_aligned_error, tensor_product
from .unfolding import Pairing, QubitLabel, channel_matrix, entries_of, single_unfolding

FACTOR_ATOL = 1e-9


@dataclass(frozen=True)
class Tolerances:
    relative: float = 1e-9
    absolute: float = 1e-12

    def __post_init__(self):
        if not (self.relative > 0 and self.absolute > 0):
            raise ValueError("tolerances must be strictly positive")
        if not self.relative < 1:
            raise ValueError("relative tolerance must be below 1")

    def threshold(self, sigma_max: float) -> float:
        return max(self.relative * sigma_max, self.absolute)


DEFAULT_TOL = Tolerances()


def singular_values(matrix) -> np.ndarray:
    m = entries_of(matrix)
    if not np.all(np.isfinite(m)):
        raise NonFiniteEntry("matrix has NaN or infinite entries")
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def numerical_rank(matrix, tol: Tolerances = DEFAULT_TOL) -> int:
    """Count singular values above ``max(rel * sigma_max, abs)``."""
    s = singular_values(matrix)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.threshold(s[0])))


class Label(enum.Enum):
    FULLY_SEPARABLE = "FullySeparable"
    PARTIALLY_SEPARABLE = "PartiallySeparable"
    BIPARTITE_PAIR = "BipartitePair"
    COMPLETELY_ENTANGLED = "CompletelyEntangled"


@dataclass(frozen=True)
class ClassificationReport:
    single_ranks: dict[QubitLabel, int]
    pair_ranks: dict[Pairing, int]
    label: Label
    separable_qubits: tuple[QubitLabel, ...] = ()
    pair: Pairing | None = None
    factors: list[PureState] | None = field(default=None, compare=False)

    def describe(self) -> str:
        if self.label is Label.BIPARTITE_PAIR:
            return f"{self.label.value} {self.pair.split}"
        if self.label is Label.PARTIALLY_SEPARABLE:
            qubits = ",".join(q.name for q in self.separable_qubits)
            return f"{self.label.value} ({qubits})"
        return self.label.value


def _canonical_phase(vec: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(vec) > FACTOR_ATOL)
    lead = vec[nz[0]]
    return vec * (abs(lead) / lead)


def _factors_from_ranks(state, single_ranks, tol) -> list[PureState]:
    factors = []
    for label in QubitLabel:
        u, _, _ = np.linalg.svd(single_unfolding(state, label).entries)
        factors.append(make_state(_canonical_phase(u[:, 0]), 1))
    product = factors[0]
    for f in factors[1:]:
        product = tensor_product(product, f)
    err = phase_aligned_error(product.amplitudes, state.amplitudes)
    if err > FACTOR_ATOL:
        raise NotSeparable(f"factor product deviates from the state by {err:.3g}")
    return factors


def separable_factors(state: PureState, tol: Tolerances = DEFAULT_TOL) -> list[PureState]:
    """Split a fully separable four-qubit state into single-qubit factors.

    Each factor is the dominant left singular vector of that qubit's 2x8
    unfolding, rotated so its first nonzero amplitude is real and positive.
    """
    ranks = {label: numerical_rank(single_unfolding(state, label), tol) for label in QubitLabel}
    entangled = [label.name for label, r in ranks.items() if r != 1]
    if entangled:
        raise NotSeparable(f"single-qubit unfolding rank exceeds 1 for {', '.join(entangled)}")
    return _factors_from_ranks(state, ranks, tol)


def classify(state: PureState, tol: Tolerances = DEFAULT_TOL) -> ClassificationReport:
    single = {label: numerical_rank(single_unfolding(state, label), tol) for label in QubitLabel}
    pairs = {p: numerical_rank(channel_matrix(state, p), tol) for p in Pairing}

    separable = tuple(label for label, r in single.items() if r == 1)
    if len(separable) == 4:
        factors = _factors_from_ranks(state, single, tol)
        return ClassificationReport(single, pairs, Label.FULLY_SEPARABLE, separable, factors=factors)
    if separable:
        return ClassificationReport(single, pairs, Label.PARTIALLY_SEPARABLE, separable)

    rank_one = [p for p, r in pairs.items() if r == 1]
    if len(rank_one) > 1:
        names = ", ".join(p.name for p in rank_one)
        raise InconsistentRanks(f"pairings {names} all have rank 1 while every qubit is entangled")
    if rank_one:
        return ClassificationReport(single, pairs, Label.BIPARTITE_PAIR, pair=rank_one[0])
    return ClassificationReport(single, pairs, Label.COMPLETELY_ENTANGLED)
