"""Named four-qubit states used as channels and measurements."""

from __future__ import annotations

from .ket_parser import parse_ket_expression
from .state import PureState

PRESETS: dict[str, str] = {
    "ghz": "1/sqrt(2)(|0000> + |1111>)",
    "w": "1/2(|0001> + |0010> + |0100> + |1000>)",
    "bellpairs": "1/2(|0000> + |0011> + |1100> + |1111>)",
    "cluster": "1/2(|0000> + |0011> + |1100> - |1111>)",
    "eq19": "1/2(|0000> + |0101> + |1010> + |1111>)",
    "eq23": (
        "1/4(|0000> + |0001> + |0010> + |0011>"
        " + |0100> - |0101> + |0110> - |0111>"
        " + |1000> + |1001> - |1010> - |1011>"
        " + |1100> - |1101> - |1110> + |1111>)"
    ),
    "sep": "1/2(|0001> + |0011> + |0101> + |0111>)",
    "nonbell": "1/2(|0000> + |0101> + |1011> + |1110>)",
}

CHANNEL_PRESETS = ("ghz", "w", "bellpairs", "cluster", "eq19", "eq23")


def preset_state(name: str) -> PureState:
    try:
        text = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return parse_ket_expression(text)
