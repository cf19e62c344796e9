import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from channelrank import format_ket_expression, parse_ket_expression, parse_ket_terms, random_state
from channelrank.errors import (
    ArityOverflow,
    ChannelRankError,
    KetSyntaxError,
    MixedArity,
    NotNormalized,
    ZeroVector,
)
from channelrank.state import make_state
from fixtures_paper import STATES


def test_ghz_prefix_coefficient():
    s = parse_ket_expression("1/sqrt(2)(|0000> + |1111>)")
    expected = np.zeros(16)
    expected[[0, 15]] = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_single_basis_ket():
    assert np.array_equal(parse_ket_expression("|00>").amplitudes, [1, 0, 0, 0])


def test_separable_example():
    s = parse_ket_expression("1/2(|0001>+|0011>+|0101>+|0111>)")
    assert np.flatnonzero(s.amplitudes).tolist() == [1, 3, 5, 7]
    assert np.all(s.amplitudes[[1, 3, 5, 7]] == 0.5)


def test_sixteen_term_state_is_exact():
    from channelrank.presets import PRESETS

    s = parse_ket_expression(PRESETS["eq23"])
    assert np.all(np.abs(s.amplitudes) == 0.25)
    assert np.array_equal(s.amplitudes, STATES["eq23"])


@pytest.mark.parametrize(
    "text, index, value",
    [
        ("3/5|0> + 4/5|1>", 1, 0.8),
        ("sqrt(3)/2|0> + 1/2|1>", 0, math.sqrt(3) / 2),
        ("1/sqrt(2)(|0> - i|1>)", 1, -1j / math.sqrt(2)),
        ("1/sqrt(2)|0> + 1/sqrt(2)i|1>", 1, 1j / math.sqrt(2)),
        ("-0.6|0> - 0.8i|1>", 0, -0.6),
        ("i(0.6|0> + 0.8|1>)", 1, 0.8j),
        ("1/2(|00> + |01>) + 1/sqrt(2)|11>", 3, 1 / math.sqrt(2)),
        ("0.5*|0> + 0.5|0> + |1> - |1> + 0.0|1>", 0, 1.0),
    ],
)
def test_coefficient_forms(text, index, value):
    s = parse_ket_expression(text)
    assert s.amplitudes[index] == pytest.approx(value, abs=1e-15)


def test_duplicates_merged():
    expr = parse_ket_terms("1/2|01> + 1/2|01> + 0|10>")
    assert dict((b, c) for c, b in expr.terms) == {"01": 1.0, "10": 0.0}
    assert expr.num_qubits == 2


@pytest.mark.parametrize(
    "text, pos",
    [("|00> +", 6), ("|0a>", 0), ("1/2 |00", 4), ("(|00>", 5), ("1/(|0>)", 2), ("", 0), ("|00> |11>", 5)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(KetSyntaxError) as info:
        parse_ket_expression(text)
    assert info.value.position == pos


def test_syntax_error_names_expected_token():
    with pytest.raises(KetSyntaxError, match="expected a ket or '\\('"):
        parse_ket_expression("1/2 + |0>")


def test_mixed_arity():
    with pytest.raises(MixedArity):
        parse_ket_expression("1/sqrt(2)(|00> + |111>)")


def test_too_many_qubits():
    with pytest.raises(ArityOverflow):
        parse_ket_expression("|000000000>")


def test_division_by_zero_is_typed():
    with pytest.raises(KetSyntaxError, match="division by zero"):
        parse_ket_expression("1/0|0>")
    with pytest.raises(KetSyntaxError):
        parse_ket_expression("1/sqrt(0)|0>")


def test_not_normalized_rejected_by_default():
    with pytest.raises(NotNormalized):
        parse_ket_expression("|00> + |11>")


def test_normalize_option_warns():
    with pytest.warns(UserWarning, match="normalizing"):
        s = parse_ket_expression("|00> + |11>", normalize=True)
    np.testing.assert_allclose(s.amplitudes, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])


def test_zero_sum_cannot_be_normalized():
    with pytest.raises(ZeroVector):
        parse_ket_expression("|0> - |0>", normalize=True)


def test_rounded_decimals_accepted_and_rescaled():
    s = parse_ket_expression("0.7071067812|0000> + 0.7071067812|1111>")
    assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-15


def test_format_ghz():
    s = make_state(STATES["ghz"])
    assert format_ket_expression(s, 10) == "0.7071067812|0000> + 0.7071067812|1111>"


def test_format_unit_coefficient_elided():
    assert format_ket_expression(make_state([0, 1, 0, 0]), 10) == "|01>"


def test_format_negative_term():
    text = format_ket_expression(make_state(STATES["cluster"]), 10)
    assert text == "0.5|0000> + 0.5|0011> + 0.5|1100> - 0.5|1111>"


def test_format_complex_and_leading_minus():
    s = make_state([-0.6, 0.8j])
    assert format_ket_expression(s, 6) == "-0.6|0> + 0.8i|1>"
    s = make_state([0, -1j])
    assert format_ket_expression(s, 6) == "-i|1>"


def test_round_trip_1000_random_states():
    worst = 0.0
    for seed in range(1000):
        s = random_state(1 + seed % 6, seed)
        back = parse_ket_expression(format_ket_expression(s, 12))
        worst = max(worst, float(np.max(np.abs(back.amplitudes - s.amplitudes))))
    assert worst < 1e-10


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.integers(7, 14))
def test_round_trip_within_precision(n, seed, precision):
    s = random_state(n, seed)
    back = parse_ket_expression(format_ket_expression(s, precision))
    assert np.max(np.abs(back.amplitudes - s.amplitudes)) < 10.0**-precision


# grammar-directed generation with an independently evaluated expected vector

_NUMBERS = st.sampled_from([(1, "1"), (2, "2"), (3, "3"), (0.5, "0.5"), (0.25, ".25"), (4, "4.")])


@st.composite
def coefficients(draw):
    kind = draw(st.sampled_from(["plain", "frac", "rootden", "rootnum", "i", "none"]))
    a, at = draw(_NUMBERS)
    b, bt = draw(_NUMBERS)
    value, text = {
        "plain": (a, at),
        "frac": (a / b, f"{at}/{bt}"),
        "rootden": (a / math.sqrt(b), f"{at}/sqrt({bt})"),
        "rootnum": (math.sqrt(a) / b, f"sqrt({at})/{bt}"),
        "i": (1j, "i"),
        "none": (1, ""),
    }[kind]
    if kind not in ("i", "none") and draw(st.booleans()):
        value, text = value * 1j, text + "i"
    return value, text


@st.composite
def expressions(draw, n, depth=2):
    count = draw(st.integers(1, 3))
    vec = np.zeros(1 << n, dtype=complex)
    parts = []
    for k in range(count):
        sign = draw(st.sampled_from([1, -1]))
        coeff, ctext = draw(coefficients())
        if depth > 0 and draw(st.booleans()):
            inner_vec, inner_text = draw(expressions(n, depth - 1))
            ctext = ctext or "1"
            body = f"{ctext}({inner_text})"
            vec = vec + sign * coeff * inner_vec
        else:
            bits = draw(st.text("01", min_size=n, max_size=n))
            body = f"{ctext}|{bits}>"
            vec[int(bits, 2)] += sign * coeff
        op = "-" if sign < 0 else "+"
        parts.append((f"-{body}" if sign < 0 else body) if k == 0 else f" {op} {body}")
    return vec, "".join(parts)


@given(st.integers(1, 4).flatmap(lambda n: expressions(n)))
def test_generated_expressions_evaluate_correctly(case):
    expected, text = case
    norm = np.linalg.norm(expected)
    if norm < 1e-9:
        with pytest.raises(ChannelRankError):
            parse_ket_expression(text, normalize=True)
        return
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s = parse_ket_expression(text, normalize=True)
    np.testing.assert_allclose(s.amplitudes, expected / norm, atol=1e-12)


_ALPHABET = st.sampled_from(list("01|>()+-/*i .") + ["sqrt(", "sqrt", "|0>", "|01>", "1/2", "⟩", "x", "99999999999999999999"])


@given(st.lists(_ALPHABET, max_size=25).map("".join))
def test_parser_is_total(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for normalize in (False, True):
            try:
                s = parse_ket_expression(text, normalize=normalize)
            except ChannelRankError:
                continue
            assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-9
