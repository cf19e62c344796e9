"""Print every channel matrix, rank, label and sigma_B for the named example states."""

import numpy as np

from channelrank import AliceAssignment, Pairing, bell_product_measurement, bob_transform, classify, numerical_rank
from channelrank import channel_matrix, measurement_from_state, teleportable, transfer_matrix
from channelrank.cli import format_matrix
from channelrank.errors import SingularTransfer
from channelrank.presets import CHANNEL_PRESETS, PRESETS, preset_state

np.set_printoptions(precision=4, suppress=True)


def main():
    for name in CHANNEL_PRESETS + ("sep",):
        s = preset_state(name)
        print(f"== {name}: {PRESETS[name]}")
        for p in Pairing:
            m = channel_matrix(s, p)
            print(f"C_{p.name} rank {numerical_rank(m)}")
            print(format_matrix(m.entries, 4))
        print("label:", classify(s).describe())
        for a in AliceAssignment:
            f = teleportable(s, a)
            print(f"  alice {a.name[1:]}: pairing {f.pairing.name} rank {f.rank} -> {'feasible' if f.feasible else 'infeasible'}")
        print()

    nonbell = measurement_from_state(preset_state("nonbell"), "nonbell")
    cases = [("eq19", bell_product_measurement(1, 3)), ("eq23", bell_product_measurement(1, 1)),
             ("eq19", nonbell), ("eq23", nonbell), ("ghz", bell_product_measurement(1, 1))]
    for name, meas in cases:
        t = transfer_matrix(preset_state(name), AliceAssignment.Q34, meas)
        try:
            sigma = bob_transform(t).sigma
            print(f"sigma_B for {name}, {meas.description}:")
            print(format_matrix(sigma, 6))
        except SingularTransfer as exc:
            print(f"{name}, {meas.description}: {exc}")


if __name__ == "__main__":
    main()
