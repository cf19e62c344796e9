"""Command-line front end.

Exit codes: 0 success, 1 usage/parse/IO error, 2 mathematically infeasible
(rank-deficient channel or singular transfer matrix).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ChannelRankError, SingularTransfer
from .ket_parser import format_ket_expression, parse_ket_expression
from .presets import PRESETS
from .rank import ClassificationReport, Tolerances, classify, numerical_rank
from .state import PRNG_NAME, PureState, random_state
from .teleport import (
    AliceAssignment,
    Measurement,
    bell_product_measurement,
    bob_transform,
    measurement_from_state,
    simulate_teleportation,
    teleportable,
    transfer_matrix,
)
from .unfolding import channel_matrices, single_unfoldings

TOOL = "channelrank"
EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _COMPLEX}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["tool", "version", "command", "tolerances", "seed", "prng", "result"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": TOOL},
        "version": {"type": "string"},
        "command": {"enum": ["analyze", "classify", "teleport-check", "sigma", "simulate", "parse"]},
        "tolerances": {
            "type": "object",
            "required": ["relative", "absolute"],
            "properties": {"relative": {"type": "number"}, "absolute": {"type": "number"}},
        },
        "seed": {"type": "integer"},
        "prng": {"type": "string"},
        "result": {"type": "object"},
    },
    "$defs": {"complex": _COMPLEX, "matrix": _MATRIX},
}

_RANKED = {
    "type": "object",
    "additionalProperties": {
        "type": "object",
        "required": ["matrix", "rank"],
        "properties": {"matrix": _MATRIX, "rank": {"type": "integer", "minimum": 0}},
    },
}
_CLASSIFICATION = {
    "required": ["label", "single_ranks", "pair_ranks", "separable_qubits", "pair", "factors"],
    "properties": {
        "label": {"enum": ["FullySeparable", "PartiallySeparable", "BipartitePair", "CompletelyEntangled"]},
        "pair": {"enum": ["AB", "AC", "AD", None]},
        "factors": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "array", "items": _COMPLEX}}]},
    },
}
RESULT_SCHEMAS = {
    "parse": {
        "required": ["num_qubits", "amplitudes", "expression"],
        "properties": {"amplitudes": {"type": "array", "items": _COMPLEX}},
    },
    "analyze": {
        "required": ["input", "single_unfoldings", "channel_matrices", "classification"],
        "properties": {
            "single_unfoldings": _RANKED,
            "channel_matrices": _RANKED,
            "classification": _CLASSIFICATION,
        },
    },
    "classify": {"required": ["input", *_CLASSIFICATION["required"]], "properties": _CLASSIFICATION["properties"]},
    "teleport-check": {
        "required": ["input", "alice", "pairing", "rank", "feasible"],
        "properties": {"feasible": {"type": "boolean"}, "rank": {"type": "integer"}},
    },
    "sigma": {
        "required": ["input", "measurement", "transfer_matrix", "invertible", "transfer_rank"],
        "properties": {"transfer_matrix": _MATRIX, "sigma": _MATRIX, "invertible": {"type": "boolean"}},
    },
    "simulate": {
        "required": ["input", "measurement"],
        "properties": {
            "sigma": _MATRIX,
            "trials": {
                "type": "array",
                "items": {"required": ["trial", "input", "collapsed", "recovered", "outcome_probability", "max_error"]},
            },
        },
    },
}
REPORT_SCHEMA["allOf"] = [
    {"if": {"properties": {"command": {"const": cmd}}}, "then": {"properties": {"result": sub}}}
    for cmd, sub in RESULT_SCHEMAS.items()
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# --- serialisation helpers -------------------------------------------------


def cjson(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def vector_json(vec) -> list:
    return [cjson(z) for z in np.asarray(vec).reshape(-1)]


def matrix_json(m) -> list:
    return [[cjson(z) for z in row] for row in np.asarray(m)]


def _fmt(z, precision: int) -> str:
    z = complex(z)
    re_, im = z.real, z.imag
    scale = max(abs(re_), abs(im))
    cutoff = max(scale * 1e-12, 1e-14)
    re_ = 0.0 if abs(re_) < cutoff else re_
    im = 0.0 if abs(im) < cutoff else im
    if im == 0.0:
        return f"{re_:.{precision}g}"
    if re_ == 0.0:
        return f"{im:.{precision}g}i"
    return f"{re_:.{precision}g}{im:+.{precision}g}i"


def format_matrix(m, precision: int, indent: str = "  ") -> str:
    cells = [[_fmt(z, precision) for z in row] for row in np.asarray(m)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(indent + "  ".join(c.rjust(width) for c in row) for row in cells)


def format_table(headers, rows) -> str:
    table = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in table) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# --- input resolution ------------------------------------------------------


def _read_state_file(path: str) -> str:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    lines = [line.split("#", 1)[0] for line in raw.splitlines()]
    text = " ".join(line.strip() for line in lines).strip()
    if not text:
        raise UsageError(f"{path} contains no ket expression")
    return text


def resolve_expression(spec: str) -> str:
    """``preset:NAME``, ``file:PATH`` or an inline ket expression."""
    if spec.startswith("preset:"):
        name = spec[len("preset:"):]
        if name not in PRESETS:
            raise UsageError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
        return PRESETS[name]
    if spec.startswith("file:"):
        return _read_state_file(spec[len("file:"):])
    return spec


def resolve_state(spec: str) -> tuple[str, PureState]:
    text = resolve_expression(spec)
    return text, parse_ket_expression(text)


def resolve_measurement(spec: str) -> Measurement:
    if spec.startswith("bell:"):
        try:
            i, j = (int(v) for v in spec[len("bell:"):].split(","))
        except ValueError:
            raise UsageError(f"bad Bell measurement {spec!r}; use bell:i,j with i,j in 1..4") from None
        return bell_product_measurement(i, j)
    if spec.startswith("state:"):
        text = spec[len("state:"):].strip().strip('"').strip("'")
        return measurement_from_state(parse_ket_expression(text), spec)
    if spec.startswith(("preset:", "file:")):
        return measurement_from_state(resolve_state(spec)[1], spec)
    raise UsageError(f"bad measurement {spec!r}; use bell:i,j, state:\"<expr>\" or preset:nonbell")


def _require_channel(state: PureState):
    if state.num_qubits != 4:
        raise UsageError(f"channel must be a 4-qubit state, got {state.num_qubits} qubits")


# --- report pieces ---------------------------------------------------------


def classification_json(report: ClassificationReport) -> dict:
    return {
        "label": report.label.value,
        "description": report.describe(),
        "single_ranks": {k.name: v for k, v in report.single_ranks.items()},
        "pair_ranks": {k.name: v for k, v in report.pair_ranks.items()},
        "separable_qubits": [q.name for q in report.separable_qubits],
        "pair": report.pair.name if report.pair else None,
        "factors": [vector_json(f.amplitudes) for f in report.factors] if report.factors else None,
    }


def _rank_lines(report: ClassificationReport) -> str:
    rows = [(f"single {k.name}", v) for k, v in report.single_ranks.items()]
    rows += [(f"pair {k.name}", v) for k, v in report.pair_ranks.items()]
    return format_table(["unfolding", "rank"], rows)


# --- commands --------------------------------------------------------------


def cmd_parse(args, tol):
    state = parse_ket_expression(resolve_expression(args.expression), normalize=args.normalize)
    result = {
        "num_qubits": state.num_qubits,
        "amplitudes": vector_json(state.amplitudes),
        "expression": format_ket_expression(state, max(args.precision, 12)),
    }
    text = f"{result['expression']}\nqubits: {state.num_qubits}"
    return EXIT_OK, result, text


def cmd_analyze(args, tol):
    expr, state = resolve_state(args.state)
    _require_channel(state)
    p = args.precision
    singles, pairs = single_unfoldings(state), channel_matrices(state)
    report = classify(state, tol)
    result = {
        "input": expr,
        "single_unfoldings": {
            k.name: {"matrix": matrix_json(m.entries), "rank": numerical_rank(m, tol)}
            for k, m in singles.items()
        },
        "channel_matrices": {
            k.name: {"matrix": matrix_json(m.entries), "rank": numerical_rank(m, tol)}
            for k, m in pairs.items()
        },
        "classification": classification_json(report),
    }
    out = [f"state: {expr}", ""]
    for k, m in singles.items():
        out += [f"C_{k.name} (rank {result['single_unfoldings'][k.name]['rank']}):", format_matrix(m.entries, p), ""]
    for k, m in pairs.items():
        out += [f"C_{k.name} (rank {result['channel_matrices'][k.name]['rank']}):", format_matrix(m.entries, p), ""]
    out += [f"classification: {report.describe()}"]
    return EXIT_OK, result, "\n".join(out)


def cmd_classify(args, tol):
    expr, state = resolve_state(args.state)
    _require_channel(state)
    report = classify(state, tol)
    result = {"input": expr, **classification_json(report)}
    out = [report.describe(), "", _rank_lines(report)]
    if report.factors:
        out += ["", "factors:"]
        out += [f"  {q.name}: {format_ket_expression(f, args.precision)}" for q, f in zip(report.single_ranks, report.factors)]
    return EXIT_OK, result, "\n".join(out)


def cmd_teleport_check(args, tol):
    expr, channel = resolve_state(args.channel)
    _require_channel(channel)
    assignment = AliceAssignment.from_qubits(args.alice)
    feas = teleportable(channel, assignment, tol)
    result = {
        "input": expr,
        "alice": args.alice,
        "pairing": feas.pairing.name,
        "rank": feas.rank,
        "feasible": feas.feasible,
    }
    verdict = "feasible" if feas.feasible else "infeasible"
    text = format_table(
        ["alice", "pairing", "rank", "verdict"], [(args.alice, feas.pairing.name, feas.rank, verdict)]
    )
    return (EXIT_OK if feas.feasible else EXIT_INFEASIBLE), result, text


def _measurement_arg(args) -> str:
    spec = args.measurement_opt or args.measurement
    if not spec:
        raise UsageError("a measurement is required (bell:i,j, state:\"<expr>\" or preset:nonbell)")
    return spec


def cmd_sigma(args, tol):
    expr, channel = resolve_state(args.channel)
    _require_channel(channel)
    assignment = AliceAssignment.from_qubits(args.alice)
    meas = resolve_measurement(_measurement_arg(args))
    t = transfer_matrix(channel, assignment, meas)
    result = {
        "input": expr,
        "alice": args.alice,
        "measurement": meas.description,
        "transfer_matrix": matrix_json(t),
    }
    try:
        bob = bob_transform(t, tol)
    except SingularTransfer as exc:
        result.update(invertible=False, transfer_rank=exc.rank)
        return EXIT_INFEASIBLE, result, f"singular: transfer matrix rank {exc.rank}"
    result.update(
        invertible=True,
        transfer_rank=4,
        sigma=matrix_json(bob.sigma),
        condition_number=bob.condition_number,
        proportional_to_unitary=bob.proportional_to_unitary,
    )
    text = "\n".join(
        [
            "sigma_B:",
            format_matrix(bob.sigma, args.precision),
            f"condition number: {bob.condition_number:.{args.precision}g}",
            f"proportional to unitary: {'yes' if bob.proportional_to_unitary else 'no'}",
        ]
    )
    return EXIT_OK, result, text


def cmd_simulate(args, tol):
    expr, channel = resolve_state(args.channel)
    _require_channel(channel)
    assignment = AliceAssignment.from_qubits(args.alice)
    meas = resolve_measurement(_measurement_arg(args))
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    fixed = None
    if args.input != "random":
        fixed = resolve_state(args.input)[1]
        if fixed.num_qubits != 2:
            raise UsageError(f"input must be a 2-qubit state, got {fixed.num_qubits} qubits")

    try:
        bob = bob_transform(transfer_matrix(channel, assignment, meas), tol)
    except SingularTransfer as exc:
        result = {"input": expr, "measurement": meas.description, "invertible": False, "transfer_rank": exc.rank}
        return EXIT_INFEASIBLE, result, f"singular: transfer matrix rank {exc.rank}"

    trials = []
    for k in range(args.trials):
        x = fixed if fixed is not None else random_state(2, seed=(args.seed, k))
        sim = simulate_teleportation(channel, assignment, meas, x, tol)
        trials.append(
            {
                "trial": k,
                "input": vector_json(x.amplitudes),
                "collapsed": vector_json(sim.collapsed),
                "recovered": vector_json(sim.recovered.amplitudes),
                "outcome_probability": sim.outcome_probability,
                "max_error": sim.max_error,
            }
        )
    summary = {
        "trials": len(trials),
        "max_error": max(t["max_error"] for t in trials),
        "min_probability": min(t["outcome_probability"] for t in trials),
        "max_probability": max(t["outcome_probability"] for t in trials),
    }
    result = {
        "input": expr,
        "alice": args.alice,
        "measurement": meas.description,
        "sigma": matrix_json(bob.sigma),
        "trials": trials,
        "summary": summary,
    }
    p = args.precision
    rows = [(t["trial"], f"{t['outcome_probability']:.{p}g}", f"{t['max_error']:.3g}") for t in trials]
    text = "\n".join(
        [
            format_table(["trial", "probability", "max_error"], rows),
            "",
            f"max error over {len(trials)} trials: {summary['max_error']:.3g}",
        ]
    )
    return EXIT_OK, result, text


# --- argument parsing ------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    p.add_argument("--rel-tol", type=float, default=d(1e-9), help="relative singular-value cutoff")
    p.add_argument("--abs-tol", type=float, default=d(1e-12), help="absolute singular-value cutoff")
    p.add_argument("--precision", type=int, default=d(6), help="significant digits in tables")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description=__doc__.splitlines()[0], parents=[_common(True)])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common(False)

    p = sub.add_parser("parse", parents=[common], help="parse and re-emit a ket expression")
    p.add_argument("expression")
    p.add_argument("--normalize", action="store_true", help="rescale a non-normalized expression")
    p.set_defaults(func=cmd_parse)

    for name, func, helptext in (
        ("analyze", cmd_analyze, "print all unfoldings with their ranks"),
        ("classify", cmd_classify, "rank-based entanglement classification"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("state", help="preset:NAME, file:PATH or a ket expression")
        p.set_defaults(func=func)

    alice = dict(choices=["34", "35", "36"], default="34", help="Alice's channel qubits")

    p = sub.add_parser("teleport-check", parents=[common], help="rank-four feasibility test")
    p.add_argument("channel")
    p.add_argument("--alice", **alice)
    p.set_defaults(func=cmd_teleport_check)

    for name, func, helptext in (
        ("sigma", cmd_sigma, "Bob's recovery matrix for one measurement"),
        ("simulate", cmd_simulate, "run the protocol on explicit or random inputs"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("channel")
        p.add_argument("measurement", nargs="?", help="bell:i,j, state:\"<expr>\" or preset:nonbell")
        p.add_argument("--measurement", dest="measurement_opt", metavar="MEAS")
        p.add_argument("--alice", **alice)
        if name == "simulate":
            p.add_argument("--input", default="random", help="2-qubit state spec or 'random'")
            p.add_argument("--trials", type=int, default=1)
            p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = Tolerances(args.rel_tol, args.abs_tol)
        code, result, text = args.func(args, tol)
    except (ChannelRankError, UsageError, ValueError) as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.json:
        doc = {
            "tool": TOOL,
            "version": __version__,
            "command": args.command,
            "tolerances": {"relative": tol.relative, "absolute": tol.absolute},
            "seed": getattr(args, "seed", 0),
            "prng": PRNG_NAME,
            "result": result,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(text)
    return code


def main():
    sys.exit(run())
