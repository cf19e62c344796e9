import numpy as np
import pytest
from hypothesis import given, strategies as st

import channelrank.rank as rank_mod
from channelrank import (
    Label,
    Pairing,
    QubitLabel,
    Tolerances,
    basis_state,
    channel_matrix,
    classify,
    density_matrix,
    make_state,
    numerical_rank,
    partial_trace,
    random_state,
    separable_factors,
    tensor_product,
)
from channelrank.errors import InconsistentRanks, NonFiniteEntry, NotSeparable
from channelrank.state import phase_aligned_error
from fixtures_paper import CHANNEL_MATRICES, SEP_FACTORS, STATES
from helpers import random_bipartite

R2 = 1 / np.sqrt(2)


def test_tolerances_validation():
    assert Tolerances().relative == 1e-9 and Tolerances().absolute == 1e-12
    for bad in [(0, 1e-12), (1e-9, 0), (1.0, 1e-12), (-1, 1)]:
        with pytest.raises(ValueError):
            Tolerances(*bad)


def test_numerical_rank_examples():
    assert numerical_rank(CHANNEL_MATRICES["ghz"][0]) == 2
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(CHANNEL_MATRICES["eq23"][1]) == 1
    assert numerical_rank(np.zeros((4, 4))) == 0


def test_numerical_rank_threshold_rule():
    m = np.diag([1.0, 1e-8, 1e-10])
    assert numerical_rank(m) == 2
    assert numerical_rank(m, Tolerances(relative=1e-7)) == 1
    assert numerical_rank(np.diag([1e-11, 1e-13])) == 1  # absolute floor
    with pytest.raises(NonFiniteEntry):
        numerical_rank(np.array([[np.inf, 0], [0, 1]]))


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.floats(-6, 6))
def test_rank_is_scale_free(seed, r, log_alpha):
    gen = np.random.default_rng(seed)
    u, _ = np.linalg.qr(gen.normal(size=(4, 4)) + 1j * gen.normal(size=(4, 4)))
    v, _ = np.linalg.qr(gen.normal(size=(4, 4)) + 1j * gen.normal(size=(4, 4)))
    s = np.zeros(4)
    s[:r] = gen.uniform(0.1, 1.0, size=r)
    m = u @ np.diag(s) @ v
    alpha = 10.0**log_alpha * np.exp(1j * gen.uniform(0, 2 * np.pi))
    assert numerical_rank(m) == r
    assert numerical_rank(alpha * m) == r


@pytest.mark.parametrize(
    "name, label, pair, pairs",
    [
        ("ghz", Label.COMPLETELY_ENTANGLED, None, (2, 2, 2)),
        ("w", Label.COMPLETELY_ENTANGLED, None, (2, 2, 2)),
        ("bellpairs", Label.BIPARTITE_PAIR, Pairing.AB, (1, 4, 4)),
        ("cluster", Label.COMPLETELY_ENTANGLED, None, (2, 4, 4)),
        ("eq19", Label.BIPARTITE_PAIR, Pairing.AC, (4, 1, 4)),
        ("eq23", Label.BIPARTITE_PAIR, Pairing.AC, (4, 1, 4)),
    ],
)
def test_classify_paper_states(name, label, pair, pairs):
    report = classify(make_state(STATES[name]))
    assert report.label is label
    assert report.pair is pair
    assert tuple(report.pair_ranks.values()) == pairs
    assert set(report.single_ranks.values()) == {2}
    assert report.factors is None


def test_classify_bipartite_description():
    assert classify(make_state(STATES["bellpairs"])).describe() == "BipartitePair AB-CD"
    assert classify(make_state(STATES["eq19"])).describe() == "BipartitePair AC-BD"


def test_classify_separable_state():
    report = classify(make_state(STATES["sep"]))
    assert report.label is Label.FULLY_SEPARABLE
    assert set(report.single_ranks.values()) == {1}
    for got, want in zip(report.factors, SEP_FACTORS):
        np.testing.assert_allclose(got.amplitudes, want, atol=1e-9)


def test_partially_separable():
    ghz3 = make_state([R2, 0, 0, 0, 0, 0, 0, R2])
    report = classify(tensor_product(basis_state("0"), ghz3))
    assert report.label is Label.PARTIALLY_SEPARABLE
    assert report.separable_qubits == (QubitLabel.A,)
    assert report.describe() == "PartiallySeparable (A)"


def test_separable_factors_examples():
    fs = separable_factors(make_state(STATES["sep"]))
    for got, want in zip(fs, SEP_FACTORS):
        np.testing.assert_allclose(got.amplitudes, want, atol=1e-9)
    fs = separable_factors(basis_state("0000"))
    assert all(np.array_equal(f.amplitudes, [1, 0]) for f in fs)
    with pytest.raises(NotSeparable):
        separable_factors(make_state(STATES["ghz"]))


@given(st.lists(st.integers(0, 2**32 - 1), min_size=4, max_size=4), st.floats(0, 6.28))
def test_factor_reconstruction(seeds, theta):
    qubits = [random_state(1, s) for s in seeds]
    state = qubits[0]
    for q in qubits[1:]:
        state = tensor_product(state, q)
    state = make_state(np.exp(1j * theta) * state.amplitudes)
    fs = separable_factors(state)
    product = fs[0]
    for f in fs[1:]:
        product = tensor_product(product, f)
    assert phase_aligned_error(product.amplitudes, state.amplitudes) < 1e-9
    for f in fs:
        lead = f.amplitudes[np.flatnonzero(np.abs(f.amplitudes) > 1e-9)[0]]
        assert abs(lead.imag) < 1e-12 and lead.real > 0


def _oracle_ranks(state, tol=Tolerances()):
    rho = density_matrix(state)
    singles = [numerical_rank(partial_trace(rho, [q]), tol) for q in range(4)]
    pairs = [numerical_rank(partial_trace(rho, list(p.rows)), tol) for p in Pairing]
    return singles, pairs


def _oracle_label(singles, pairs):
    if all(r == 1 for r in singles):
        return Label.FULLY_SEPARABLE
    if any(r == 1 for r in singles):
        return Label.PARTIALLY_SEPARABLE
    return Label.BIPARTITE_PAIR if 1 in pairs else Label.COMPLETELY_ENTANGLED


def test_classify_agrees_with_partial_trace_oracle():
    for seed in range(1000):
        if seed % 2:
            state, _ = random_bipartite(seed)
        else:
            state = random_state(4, seed)
        report = classify(state)
        singles, pairs = _oracle_ranks(state)
        assert list(report.single_ranks.values()) == singles
        assert list(report.pair_ranks.values()) == pairs
        assert report.label is _oracle_label(singles, pairs)
        assert report.label in (Label.COMPLETELY_ENTANGLED, Label.BIPARTITE_PAIR)


def test_random_bipartite_products_are_labelled_by_their_split():
    for seed in range(30):
        state, pairing = random_bipartite(seed)
        report = classify(state)
        assert report.label is Label.BIPARTITE_PAIR and report.pair is pairing


def test_complement_consistency_random():
    for seed in range(100):
        s = random_state(4, seed)
        rho = density_matrix(s)
        assert numerical_rank(channel_matrix(s, Pairing.AB)) == numerical_rank(partial_trace(rho, [2, 3]))


def test_inconsistent_ranks(monkeypatch):
    real = rank_mod.numerical_rank

    def fake(matrix, tol=Tolerances()):
        m = rank_mod.entries_of(matrix)
        return 1 if m.shape == (4, 4) else real(matrix, tol)

    monkeypatch.setattr(rank_mod, "numerical_rank", fake)
    with pytest.raises(InconsistentRanks):
        classify(make_state(STATES["ghz"]))
