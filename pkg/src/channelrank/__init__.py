"""Channel-matrix rank analysis of four-qubit states and two-qubit teleportation."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .ket_parser import KetExpression, format_ket_expression, parse_ket_expression, parse_ket_terms
from .rank import (
    ClassificationReport,
    Label,
    Tolerances,
    classify,
    numerical_rank,
    separable_factors,
)
from .state import (
    PureState,
    basis_state,
    density_matrix,
    make_state,
    normalize,
    partial_trace,
    random_state,
    tensor_product,
)
from .teleport import (
    AliceAssignment,
    BobTransform,
    Measurement,
    bell_product_measurement,
    bell_state,
    bob_transform,
    factorization_check,
    measurement_from_state,
    simulate_teleportation,
    teleportable,
    transfer_matrix,
)
from .unfolding import (
    ChannelMatrix,
    Pairing,
    QubitLabel,
    UnfoldingMatrix,
    channel_matrix,
    gram,
    single_unfolding,
)
