import numpy as np

from channelrank import Pairing, make_state, random_state


def random_bipartite(seed, pairing=None):
    """Product of two random two-qubit states across ``pairing`` (cycled by seed)."""
    if pairing is None:
        pairing = list(Pairing)[seed % 3]
    left, right = random_state(2, (seed, 1)), random_state(2, (seed, 2))
    t = np.einsum("ab,cd->abcd", left.amplitudes.reshape(2, 2), right.amplitudes.reshape(2, 2))
    order = list(pairing.rows) + list(pairing.columns)
    return make_state(np.transpose(t, np.argsort(order)).reshape(16)), pairing
