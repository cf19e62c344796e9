"""Single-qubit (2x8) and pair (4x4 channel) unfoldings of four-qubit states.

A four-qubit state ``sum c_ijkl |ijkl>`` is viewed as a 2x2x2x2 tensor over
the qubits A, B, C, D. An unfolding picks some qubits as the row index and the
rest as the column index; the reduced density matrix of the row qubits is
then the Gram product ``M @ M^dagger``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch
from .state import PureState


class QubitLabel(enum.Enum):
    A = 0
    B = 1
    C = 2
    D = 3

    @property
    def channel_qubit(self) -> int:
        """Qubit number in the six-qubit teleportation register (3..6)."""
        return self.value + 3

    @property
    def column_order(self) -> tuple["QubitLabel", ...]:
        """Remaining qubits, cyclically after this one (A -> B, C, D; B -> C, D, A; ...)."""
        return tuple(QubitLabel((self.value + k) % 4) for k in (1, 2, 3))


class Pairing(enum.Enum):
    AB = (0, 1)
    AC = (0, 2)
    AD = (0, 3)

    @property
    def rows(self) -> tuple[int, int]:
        return self.value

    @property
    def columns(self) -> tuple[int, int]:
        return tuple(q for q in range(4) if q not in self.value)

    @property
    def complement(self) -> str:
        return "".join("ABCD"[q] for q in self.columns)

    @property
    def split(self) -> str:
        """Bipartition name, e.g. ``AB-CD``."""
        return f"{self.name}-{self.complement}"


@dataclass(frozen=True, eq=False)
class UnfoldingMatrix:
    label: QubitLabel
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    pairing: Pairing
    entries: np.ndarray


def _tensor(state: PureState) -> np.ndarray:
    if state.num_qubits != 4:
        raise ArityMismatch(f"unfoldings need a 4-qubit state, got {state.num_qubits}")
    return state.amplitudes.reshape(2, 2, 2, 2)


def single_unfolding(state: PureState, label: QubitLabel) -> UnfoldingMatrix:
    axes = (label.value, *(q.value for q in label.column_order))
    entries = np.transpose(_tensor(state), axes).reshape(2, 8)
    return UnfoldingMatrix(label, entries)


def channel_matrix(state: PureState, pairing: Pairing) -> ChannelMatrix:
    axes = (*pairing.rows, *pairing.columns)
    entries = np.transpose(_tensor(state), axes).reshape(4, 4)
    return ChannelMatrix(pairing, entries)


def single_unfoldings(state: PureState) -> dict[QubitLabel, UnfoldingMatrix]:
    return {label: single_unfolding(state, label) for label in QubitLabel}


def channel_matrices(state: PureState) -> dict[Pairing, ChannelMatrix]:
    return {pairing: channel_matrix(state, pairing) for pairing in Pairing}


def entries_of(matrix) -> np.ndarray:
    if isinstance(matrix, (UnfoldingMatrix, ChannelMatrix)):
        return matrix.entries
    return np.asarray(matrix, dtype=np.complex128)


def gram(matrix) -> np.ndarray:
    m = entries_of(matrix)
    return m @ m.conj().T


def kept_qubits(matrix) -> list[int]:
    """Qubit indices, in row order, whose reduced density matrix ``gram`` yields."""
    if isinstance(matrix, UnfoldingMatrix):
        return [matrix.label.value]
    return list(matrix.pairing.rows)
