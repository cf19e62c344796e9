"""Pure states, density matrices, tensor products and the partial trace.

Basis order is big-endian throughout: in ``|b1 b2 ... bn>`` the first qubit is
the most significant bit of the amplitude index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    ArityOverflow,
    DimensionMismatch,
    DuplicateIndex,
    IndexOutOfRange,
    NonFiniteEntry,
    NotNormalized,
    ZeroVector,
)

MAX_QUBITS = 8
NORM_ATOL = 1e-9
PRNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True, eq=False)
class PureState:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def __repr__(self):
        return f"PureState(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"


def _as_vector(amplitudes) -> np.ndarray:
    vec = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(vec)):
        raise NonFiniteEntry("amplitudes must be finite")
    return vec


def _infer_qubits(length: int) -> int:
    n = length.bit_length() - 1
    if length < 2 or (1 << n) != length:
        raise DimensionMismatch(f"length {length} is not a power of two >= 2")
    return n


def make_state(amplitudes, num_qubits: int | None = None, atol: float = NORM_ATOL) -> PureState:
    """Validate an amplitude vector and wrap it as a :class:`PureState`.

    ``num_qubits`` is inferred from the vector length when omitted. The vector
    is not rescaled; a squared norm further than ``atol`` from one raises
    :class:`NotNormalized`.
    """
    vec = _as_vector(amplitudes)
    if num_qubits is None:
        num_qubits = _infer_qubits(vec.size)
    if num_qubits < 1 or num_qubits > MAX_QUBITS:
        raise ArityOverflow(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
    if vec.size != 1 << num_qubits:
        raise DimensionMismatch(f"expected {1 << num_qubits} amplitudes, got {vec.size}")
    norm2 = float(np.vdot(vec, vec).real)
    if abs(norm2 - 1.0) > atol:
        raise NotNormalized(f"squared norm is {norm2!r}, not 1")
    return PureState(num_qubits, vec)


def normalize(amplitudes) -> PureState:
    vec = _as_vector(amplitudes)
    _infer_qubits(vec.size)
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    return make_state(vec / norm)


def basis_state(bits: str) -> PureState:
    vec = np.zeros(1 << len(bits), dtype=np.complex128)
    vec[int(bits, 2)] = 1.0
    return make_state(vec, len(bits))


def tensor_product(left: PureState, right: PureState) -> PureState:
    n = left.num_qubits + right.num_qubits
    if n > MAX_QUBITS:
        raise ArityOverflow(f"product would have {n} qubits (max {MAX_QUBITS})")
    # index a * 2**m + b  <->  left[a] * right[b]
    return PureState(n, np.kron(left.amplitudes, right.amplitudes))


def density_matrix(state: PureState) -> np.ndarray:
    amp = state.amplitudes
    return np.outer(amp, amp.conj())


@lru_cache(maxsize=None)
def _trace_index_map(num_qubits: int, keep: tuple[int, ...]) -> np.ndarray:
    """Full-register index for every (kept pattern, traced pattern) pair.

    Row ``r`` enumerates the kept qubits' bits in the order of ``keep``; column
    ``t`` enumerates the traced qubits' bits in ascending qubit order.
    """
    traced = [q for q in range(num_qubits) if q not in keep]
    k, t = len(keep), len(traced)
    index = np.zeros((1 << k, 1 << t), dtype=np.intp)
    for r in range(1 << k):
        for s in range(1 << t):
            full = 0
            for pos, q in enumerate(keep):
                bit = (r >> (k - 1 - pos)) & 1
                full |= bit << (num_qubits - 1 - q)
            for pos, q in enumerate(traced):
                bit = (s >> (t - 1 - pos)) & 1
                full |= bit << (num_qubits - 1 - q)
            index[r, s] = full
    index.setflags(write=False)
    return index


def partial_trace(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep``.

    Sums ``rho[(r, t), (c, t)]`` over every bit pattern ``t`` of the traced
    qubits. Rows and columns of the result follow ``keep`` in the order given,
    so ``keep=[2, 0]`` puts qubit 2 in the most significant position.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {rho.shape}")
    n = _infer_qubits(rho.shape[0])
    keep = tuple(int(q) for q in keep)
    for q in keep:
        if q < 0 or q >= n:
            raise IndexOutOfRange(f"qubit {q} out of range for {n} qubits")
    if len(set(keep)) != len(keep):
        raise DuplicateIndex(f"repeated qubit in keep list {list(keep)}")
    if not keep:
        return np.array([[np.trace(rho)]])
    index = _trace_index_map(n, keep)
    dim = index.shape[0]
    out = np.zeros((dim, dim), dtype=np.complex128)
    for r in range(dim):
        for c in range(dim):
            out[r, c] = rho[index[r], index[c]].sum()
    return out


def random_state(num_qubits: int, seed=0) -> PureState:
    """Haar-random pure state from a seeded PCG64 generator.

    Draws ``2 ** (n + 1)`` standard normals; even draws are real parts and odd
    draws imaginary parts. ``seed`` may be an int or a sequence of ints (for
    per-trial streams such as ``(seed, trial)``).
    """
    if num_qubits < 1 or num_qubits > MAX_QUBITS:
        raise ArityOverflow(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.standard_normal(1 << (num_qubits + 1))
    vec = draws[0::2] + 1j * draws[1::2]
    return PureState(num_qubits, vec / np.linalg.norm(vec))


def phase_aligned_error(candidate, reference) -> float:
    """Max amplitude deviation after removing the best global phase."""
    a = np.asarray(candidate, dtype=np.complex128).reshape(-1)
    b = np.asarray(reference, dtype=np.complex128).reshape(-1)
    overlap = np.vdot(a, b)
    if abs(overlap) > 0:
        a = a * (overlap / abs(overlap))
    return float(np.max(np.abs(a - b)))
