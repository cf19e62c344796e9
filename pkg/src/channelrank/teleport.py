"""Two-qubit teleportation through a four-qubit channel.

Register layout: qubits 1, 2 carry the input state ``x0|00> + ... + x3|11>``;
qubits 3, 4, 5, 6 are the channel qubits A, B, C, D. Alice holds qubit 3 and
one of 4, 5, 6 (the assignment); Bob holds the other two.

A measurement outcome ``|mu>`` over (1, 2, a, b) turns the input vector ``x``
into Bob's unnormalised two-qubit state ``T @ x``. Bob can undo it exactly
when the 4x4 transfer matrix ``T`` is invertible; ``sigma_B = T^-1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import ArityMismatch, IndexOutOfRange, NotNormalized, SingularTransfer, ZeroProbability
from .rank import DEFAULT_TOL, Tolerances, numerical_rank, singular_values
from .state import NORM_ATOL, PureState, normalize, phase_aligned_error, tensor_product
from .unfolding import Pairing, channel_matrix


class AliceAssignment(enum.Enum):
    Q34 = 1
    Q35 = 2
    Q36 = 3

    @classmethod
    def from_qubits(cls, text) -> "AliceAssignment":
        return cls[f"Q{text}"]

    @property
    def alice_channel(self) -> tuple[int, int]:
        """Positions (0..3 = A..D) of Alice's channel qubits."""
        return (0, self.value)

    @property
    def bob_channel(self) -> tuple[int, int]:
        return tuple(q for q in range(1, 4) if q != self.value)

    @property
    def measured_qubits(self) -> tuple[int, ...]:
        return (1, 2, 3, self.value + 3)

    @property
    def bob_qubits(self) -> tuple[int, int]:
        return tuple(q + 3 for q in self.bob_channel)

    @property
    def pairing(self) -> Pairing:
        return (Pairing.AB, Pairing.AC, Pairing.AD)[self.value - 1]


@dataclass(frozen=True, eq=False)
class Measurement:
    """Projector amplitudes ``m[q1, q2, a, b]`` over the measured qubits.

    Index order is natural: input qubit 1, input qubit 2, then Alice's two
    channel qubits.
    """

    amplitudes: np.ndarray
    description: str = ""

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size != 16:
            raise ArityMismatch(f"measurement needs 16 amplitudes, got {amp.size}")
        norm2 = float(np.vdot(amp, amp).real)
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise NotNormalized(f"measurement squared norm is {norm2!r}, not 1")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2, 2, 2)


_S = 1 / np.sqrt(2)
_BELL = {
    1: np.array([_S, 0, 0, _S], dtype=np.complex128),
    2: np.array([_S, 0, 0, -_S], dtype=np.complex128),
    3: np.array([0, _S, _S, 0], dtype=np.complex128),
    4: np.array([0, _S, -_S, 0], dtype=np.complex128),
}


def bell_state(index: int) -> PureState:
    if index not in _BELL:
        raise IndexOutOfRange(f"Bell index must be 1..4, got {index}")
    return PureState(2, _BELL[index].copy())


def bell_product_measurement(i: int, j: int) -> Measurement:
    """``|beta^i>`` on (input 1, Alice's first channel qubit) times ``|beta^j>``
    on (input 2, Alice's second channel qubit)."""
    bi = bell_state(i).amplitudes.reshape(2, 2)
    bj = bell_state(j).amplitudes.reshape(2, 2)
    # bi[q1, a] * bj[q2, b] stored as m[q1, q2, a, b]
    amp = np.einsum("xa,yb->xyab", bi, bj)
    return Measurement(amp.reshape(16), f"bell:{i},{j}")


def all_bell_measurements() -> list[Measurement]:
    return [bell_product_measurement(i, j) for i in range(1, 5) for j in range(1, 5)]


def measurement_from_state(state: PureState, description: str = "") -> Measurement:
    if state.num_qubits != 4:
        raise ArityMismatch(f"measurement state needs 4 qubits, got {state.num_qubits}")
    return Measurement(state.amplitudes, description)


def _check_channel(channel: PureState):
    if channel.num_qubits != 4:
        raise ArityMismatch(f"channel must have 4 qubits, got {channel.num_qubits}")


def transfer_matrix(channel: PureState, assignment: AliceAssignment, meas: Measurement) -> np.ndarray:
    """``T[(bob bits), (x bits)]`` by explicit summation over Alice's channel bits."""
    _check_channel(channel)
    c = channel.amplitudes.reshape(2, 2, 2, 2)
    m = meas.tensor.conj()
    alice, bob = assignment.alice_channel, assignment.bob_channel
    t = np.zeros((4, 4), dtype=np.complex128)
    for bits in product((0, 1), repeat=4):
        amp = c[bits]
        if amp == 0:
            continue
        i, j = bits[alice[0]], bits[alice[1]]
        row = 2 * bits[bob[0]] + bits[bob[1]]
        for a, b in product((0, 1), repeat=2):
            t[row, 2 * a + b] += m[a, b, i, j] * amp
    return t


def measurement_matrix(meas: Measurement) -> np.ndarray:
    """``M[(alice channel bits), (x bits)] = conj(m[x bits, alice bits])``."""
    return meas.amplitudes.reshape(4, 4).conj().T


@dataclass(frozen=True, eq=False)
class FactorizationCheck:
    lhs: np.ndarray
    rhs: np.ndarray
    max_deviation: float


def factorization_check(channel: PureState, assignment: AliceAssignment, meas: Measurement) -> FactorizationCheck:
    lhs = transfer_matrix(channel, assignment, meas)
    rhs = channel_matrix(channel, assignment.pairing).entries.T @ measurement_matrix(meas)
    return FactorizationCheck(lhs, rhs, float(np.max(np.abs(lhs - rhs))))


@dataclass(frozen=True, eq=False)
class BobTransform:
    sigma: np.ndarray
    condition_number: float
    proportional_to_unitary: bool


def bob_transform(t: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> BobTransform:
    t = np.asarray(t, dtype=np.complex128)
    s = singular_values(t)
    if s[0] == 0.0 or s[-1] <= tol.threshold(s[0]):
        raise SingularTransfer(numerical_rank(t, tol))
    sigma = np.linalg.inv(t)
    g = sigma.conj().T @ sigma
    scale = np.trace(g).real / 4
    unitary_like = bool(np.max(np.abs(g - scale * np.eye(4))) <= 1e-9 * scale)
    return BobTransform(sigma, float(s[0] / s[-1]), unitary_like)


@dataclass(frozen=True)
class Feasibility:
    pairing: Pairing
    rank: int
    feasible: bool


def teleportable(channel: PureState, assignment: AliceAssignment, tol: Tolerances = DEFAULT_TOL) -> Feasibility:
    _check_channel(channel)
    rank = numerical_rank(channel_matrix(channel, assignment.pairing), tol)
    return Feasibility(assignment.pairing, rank, rank == 4)


def collapse(joint: PureState, assignment: AliceAssignment, meas: Measurement) -> np.ndarray:
    """Project the six-qubit register onto ``<mu|`` and return Bob's two amplitudes."""
    if joint.num_qubits != 6:
        raise ArityMismatch(f"joint register must have 6 qubits, got {joint.num_qubits}")
    psi = joint.amplitudes.reshape((2,) * 6)
    m = meas.tensor.conj()
    a_pos = 2 + assignment.value
    bob_pos = [2 + q for q in assignment.bob_channel]
    out = np.zeros(4, dtype=np.complex128)
    for bits in product((0, 1), repeat=6):
        amp = psi[bits]
        if amp == 0:
            continue
        weight = m[bits[0], bits[1], bits[2], bits[a_pos]]
        out[2 * bits[bob_pos[0]] + bits[bob_pos[1]]] += weight * amp
    return out


@dataclass(frozen=True, eq=False)
class SimulationResult:
    collapsed: np.ndarray
    outcome_probability: float
    recovered: PureState
    max_error: float
    bob: BobTransform


def simulate_teleportation(
    channel: PureState,
    assignment: AliceAssignment,
    meas: Measurement,
    input_state: PureState,
    tol: Tolerances = DEFAULT_TOL,
) -> SimulationResult:
    """Run one measurement outcome end to end on the full six-qubit register."""
    _check_channel(channel)
    if input_state.num_qubits != 2:
        raise ArityMismatch(f"input must have 2 qubits, got {input_state.num_qubits}")
    bob = bob_transform(transfer_matrix(channel, assignment, meas), tol)
    joint = tensor_product(input_state, channel)
    collapsed = collapse(joint, assignment, meas)
    prob = float(np.vdot(collapsed, collapsed).real)
    if np.sqrt(prob) < tol.absolute:
        raise ZeroProbability("measurement outcome has zero probability for this input")
    recovered = normalize(bob.sigma @ collapsed)
    err = phase_aligned_error(recovered.amplitudes, input_state.amplitudes)
    return SimulationResult(collapsed, prob, recovered, err, bob)


def outcome_probabilities(channel: PureState, assignment: AliceAssignment, input_state: PureState) -> np.ndarray:
    """Probabilities of the 16 Bell-product outcomes (sum to one)."""
    x = input_state.amplitudes
    probs = []
    for meas in all_bell_measurements():
        y = transfer_matrix(channel, assignment, meas) @ x
        probs.append(float(np.vdot(y, y).real))
    return np.array(probs)
