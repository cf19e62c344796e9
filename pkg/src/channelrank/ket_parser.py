"""Reading and writing flat bra-ket expressions such as ``1/sqrt(2)(|00> + |11>)``.

Grammar (whitespace between tokens is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := [coeff ['*']] (ket | '(' expr ')')
    coeff  := factor ['/' factor] ['i'] | 'i'
    factor := number | 'sqrt(' number ')'
    ket    := '|' ('0'|'1')+ ('>'|'⟩')

A coefficient in front of a parenthesised sum multiplies every term inside.
Repeated kets are merged by adding their coefficients.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ArityOverflow, KetSyntaxError, MixedArity, NotNormalized, ZeroVector
from .state import MAX_QUBITS, PureState, make_state

PARSE_NORM_ATOL = 1e-6

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ket>\|[01]+(?:>|⟩))
  | (?P<badket>\|)
  | (?P<number>\d+(?:\.\d*)?|\.\d+)
  | (?P<sqrt>sqrt)
  | (?P<i>i)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


@dataclass(frozen=True)
class KetExpression:
    """Merged (coefficient, bitstring) terms, in first-appearance order."""

    terms: tuple[tuple[complex, str], ...]
    num_qubits: int

    def amplitudes(self) -> np.ndarray:
        vec = np.zeros(1 << self.num_qubits, dtype=np.complex128)
        for coeff, bits in self.terms:
            vec[int(bits, 2)] += coeff
        return vec


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise KetSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "badket":
            raise KetSyntaxError("malformed ket", pos, "'|' followed by bits and '>'")
        if kind != "ws":
            if kind == "op":
                kind = m.group()
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.terms: list[tuple[complex, str]] = []
        self.arity: int | None = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.fail(what)
        return self.advance()

    def fail(self, expected: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise KetSyntaxError(f"unexpected {found}", tok.pos, expected)

    def parse(self):
        if self.tok.kind == "eof":
            self.fail("a ket or coefficient")
        self.expr(1.0)
        if self.tok.kind != "eof":
            self.fail("'+', '-' or end of input")
        return self.terms

    def expr(self, scale: complex):
        sign = 1.0
        if self.tok.kind in ("+", "-"):
            sign = -1.0 if self.advance().kind == "-" else 1.0
        self.term(scale * sign)
        while self.tok.kind in ("+", "-"):
            sign = -1.0 if self.advance().kind == "-" else 1.0
            self.term(scale * sign)

    def term(self, scale: complex):
        if self.tok.kind in ("number", "sqrt", "i"):
            scale = scale * self.coeff()
            if self.tok.kind == "*":
                self.advance()
        if self.tok.kind == "ket":
            tok = self.advance()
            bits = tok.text[1:-1]
            self.add_ket(bits, scale, tok.pos)
        elif self.tok.kind == "(":
            self.advance()
            self.expr(scale)
            self.expect(")", "')'")
        else:
            self.fail("a ket or '('")

    def coeff(self) -> complex:
        if self.tok.kind == "i":
            self.advance()
            return 1j
        start = self.tok.pos
        num, num_root = self.factor()
        den, den_root = Fraction(1), Fraction(1)
        if self.tok.kind == "/":
            self.advance()
            den, den_root = self.factor()
        if den == 0 or den_root == 0:
            raise KetSyntaxError("division by zero in coefficient", start)
        # rational part exactly, then one square root of the combined radicand
        value = float(num / den)
        if num_root != den_root:
            value *= math.sqrt(num_root) / math.sqrt(den_root)
        if not math.isfinite(value):
            raise KetSyntaxError("coefficient overflows double precision", start)
        if self.tok.kind == "i":
            self.advance()
            return 1j * value
        return complex(value)

    def factor(self) -> tuple[Fraction, Fraction]:
        """Return (rational, radicand) for ``number`` or ``sqrt(number)``."""
        if self.tok.kind == "number":
            return Fraction(self.advance().text), Fraction(1)
        if self.tok.kind == "sqrt":
            self.advance()
            self.expect("(", "'(' after sqrt")
            radicand = Fraction(self.expect("number", "a number").text)
            self.expect(")", "')'")
            return Fraction(1), radicand
        self.fail("a number or sqrt(...)")

    def add_ket(self, bits: str, coeff: complex, pos: int):
        if len(bits) > MAX_QUBITS:
            raise ArityOverflow(f"ket |{bits}> at position {pos} exceeds {MAX_QUBITS} qubits")
        if self.arity is None:
            self.arity = len(bits)
        elif len(bits) != self.arity:
            raise MixedArity(
                f"ket |{bits}> at position {pos} has {len(bits)} qubits, expected {self.arity}"
            )
        self.terms.append((coeff, bits))


def parse_ket_terms(text: str) -> KetExpression:
    terms = _Parser(text).parse()
    merged: dict[str, complex] = {}
    for coeff, bits in terms:
        merged[bits] = merged.get(bits, 0j) + coeff
    return KetExpression(tuple((c, b) for b, c in merged.items()), len(terms[0][1]))


def parse_ket_expression(text: str, normalize: bool = False) -> PureState:
    """Parse ``text`` into a :class:`PureState`.

    The squared norm must be within 1e-6 of one, otherwise
    :class:`NotNormalized` is raised. Inside that band the vector is rescaled
    to remove rounding in printed decimals. With ``normalize=True`` any nonzero
    vector is rescaled, with a warning when the correction is not negligible.
    """
    expr = parse_ket_terms(text)
    vec = expr.amplitudes()
    norm2 = float(np.vdot(vec, vec).real)
    if not math.isfinite(norm2):
        raise NotNormalized("amplitudes overflow")
    if abs(norm2 - 1.0) > PARSE_NORM_ATOL:
        if not normalize:
            raise NotNormalized(f"squared norm of expression is {norm2!r}, not 1")
        if norm2 == 0.0:
            raise ZeroVector("expression sums to the zero vector")
        warnings.warn(f"normalizing expression with squared norm {norm2:.6g}", stacklevel=2)
    if abs(norm2 - 1.0) > 1e-12:
        vec = vec / math.sqrt(norm2)
    return make_state(vec, expr.num_qubits)


def _format_number(x: float, precision: int) -> str:
    text = f"{x:.{precision}f}".rstrip("0").rstrip(".")
    return text


def format_ket_expression(state: PureState, precision: int = 10) -> str:
    """Render ``state`` as a parseable ket expression.

    Terms appear in ascending basis order; amplitudes that round to zero are
    dropped and unit coefficients are elided. A complex amplitude is written
    as a real term followed by an imaginary term on the same ket, which the
    parser merges back. Reparsing reproduces each amplitude to within
    ``10**-precision``; below precision 7 the rounding can exceed the parser's
    normalization band for 16 or more amplitudes.
    """
    pieces: list[tuple[str, str]] = []
    n = state.num_qubits
    for index, amp in enumerate(state.amplitudes):
        ket = f"|{index:0{n}b}>"
        for part, suffix in ((amp.real, ""), (amp.imag, "i")):
            text = _format_number(abs(part), precision)
            if text in ("0", ""):
                continue
            sign = "-" if part < 0 else "+"
            if text == "1":
                text = suffix
            else:
                text += suffix
            pieces.append((sign, text + ket))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
