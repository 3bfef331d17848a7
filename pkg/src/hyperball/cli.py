"""Command-line front end.

    hyperball space SPACE
    hyperball dist SPACE X Y [--variant d|dinv|dstar|q]
    hyperball hausdorff SPACE A B [--variant plus|minus|full]
    hyperball chain SPACE C1 C2 [--op leq|equiv|waybelow|D] [--depth N]
    hyperball embed SPACE K L [--depth N] [--check isometry|order|recover]

SPACE is a built-in name (``sorgenfrey``, ``words``), a JSON file, or inline
JSON. Set and chain arguments are files or inline JSON. Exit status: 0 for a
pass or a value, 1 for a failed verification, 2 for bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .ballset import hausdorff_minus, hausdorff_plus, hausdorff, pointset_from_json
from .errors import HyperballError
from .formal_ball import ball_from_json, q_dist
from .hyperspace import (
    FinitePoints,
    compact_from_json,
    phi,
    recover_compact,
    report_details_json,
    verify_isometry,
    verify_order_correspondence,
)
from .omega_plotkin import (
    ChainPrefix,
    certify,
    chain_equiv_at_depth,
    chain_from_json,
    chain_leq_at_depth,
    d_truncated,
    way_below_at_depth,
)
from .qspace import SorgenfreyUnit, Space, Words, conjugate_dist, dist, format_rational, load_space, sym_dist, verify_axioms

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_DEPTH = 50

BUILTIN_SPACES = {
    "sorgenfrey": SorgenfreyUnit,
    "sorgenfrey_unit": SorgenfreyUnit,
    "words": Words,
}


class InputError(Exception):
    """Unreadable or malformed command-line input."""


@dataclass
class CliReport:
    command: list[str]
    inputs_digest: str = ""
    outcome: str = "value"
    value: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "outcome": self.outcome,
            "value": self.value,
            "details": self.details,
            "exit_code": self.exit_code,
        }
        return json.dumps(doc, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        if self.outcome == "value" and not self.details:
            return str(self.value)
        lines = [self.outcome.upper() if self.value is None else f"{self.outcome.upper()} {self.value}"]
        for key in sorted(self.details):
            lines.append(f"  {key}: {_text_value(self.details[key])}")
        return "\n".join(lines)


def _text_value(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class Inputs:
    """Resolves arguments to text and records what was read for the digest."""

    def __init__(self) -> None:
        self._parts: list[str] = []

    def text(self, arg: str) -> str:
        path = Path(arg)
        try:
            is_file = path.is_file()
        except OSError:
            is_file = False
        if is_file:
            try:
                content = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"cannot read {arg}: {exc}") from exc
        else:
            content = arg
        self._parts.append(content)
        return content

    def literal(self, arg: str) -> str:
        self._parts.append(arg)
        return arg

    def json(self, arg: str) -> Any:
        content = self.text(arg)
        try:
            return json.loads(content)
        except json.JSONDecodeError as exc:
            raise InputError(f"{arg!r} is neither a readable file nor valid JSON: {exc.msg}") from exc

    def digest(self) -> str:
        h = hashlib.sha256()
        for part in self._parts:
            h.update(part.encode("utf-8"))
            h.update(b"\0")
        return h.hexdigest()


def _space(inputs: Inputs, arg: str) -> Space:
    if arg in BUILTIN_SPACES:
        inputs.literal(arg)
        return BUILTIN_SPACES[arg]()
    return load_space(inputs.json(arg))


def max_depth() -> int:
    raw = os.environ.get("HYPERBALL_MAX_DEPTH", "1000")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"HYPERBALL_MAX_DEPTH must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InputError("HYPERBALL_MAX_DEPTH must be positive")
    return cap


def _depth(depth: int) -> int:
    if depth < 1:
        raise InputError("--depth must be at least 1")
    cap = max_depth()
    if depth > cap:
        raise InputError(f"--depth {depth} exceeds HYPERBALL_MAX_DEPTH={cap}")
    return depth


# --------------------------------------------------------------------------
# Commands


def cmd_space(args: argparse.Namespace, inputs: Inputs, report: CliReport) -> None:
    space = _space(inputs, args.space)
    sample = space.default_sample()
    result = verify_axioms(space, sample)
    fmt = space.format_point
    report.outcome = "pass" if result.passed else "fail"
    report.details = {
        "kind": space.kind,
        "sample_size": result.sample_size,
        "violations": result.violation_count(),
        "triangle": [
            [fmt(x), fmt(y), fmt(z), format_rational(lhs), format_rational(rhs)]
            for x, y, z, lhs, rhs in result.triangle
        ],
        "separation": [[fmt(x), fmt(y)] for x, y in result.separation],
        "t1": [[fmt(x), fmt(y)] for x, y in result.t1],
        "self_distance": [[fmt(x), format_rational(v)] for x, v in result.self_distance],
        "over_bound": [[fmt(x), fmt(y), format_rational(v)] for x, y, v in result.over_bound],
    }


def cmd_dist(args: argparse.Namespace, inputs: Inputs, report: CliReport) -> None:
    space = _space(inputs, args.space)
    x, y = inputs.literal(args.x), inputs.literal(args.y)
    if args.variant == "q":
        value = q_dist(space, ball_from_json(space, x), ball_from_json(space, y))
    else:
        fn = {"d": dist, "dinv": conjugate_dist, "dstar": sym_dist}[args.variant]
        value = fn(space, space.parse_point(x), space.parse_point(y))
    report.value = format_rational(value)


def cmd_hausdorff(args: argparse.Namespace, inputs: Inputs, report: CliReport) -> None:
    space = _space(inputs, args.space)
    A = pointset_from_json(space, _unwrap_finite(inputs.json(args.a)))
    B = pointset_from_json(space, _unwrap_finite(inputs.json(args.b)))
    fn = {"plus": hausdorff_plus, "minus": hausdorff_minus, "full": hausdorff}[args.variant]
    report.value = format_rational(fn(space, A, B))


def _unwrap_finite(doc: Any) -> Any:
    if isinstance(doc, dict) and set(doc) == {"finite"}:
        return doc["finite"]
    return doc


def _chain(space: Space, doc: Any, depth: int) -> ChainPrefix:
    if isinstance(doc, dict) and "sets" in doc:
        return certify(space, chain_from_json(space, doc))
    return phi(space, compact_from_json(space, doc), depth)


def cmd_chain(args: argparse.Namespace, inputs: Inputs, report: CliReport) -> None:
    space = _space(inputs, args.space)
    depth = _depth(args.depth)
    c1 = _chain(space, inputs.json(args.c1), depth)
    c2 = _chain(space, inputs.json(args.c2), depth)
    if args.op == "D":
        cert = d_truncated(space, c1, c2)
        report.value = format_rational(cert.value)
        report.details = cert.to_json()
        report.details.pop("value")
        return
    fn = {"leq": chain_leq_at_depth, "equiv": chain_equiv_at_depth, "waybelow": way_below_at_depth}[args.op]
    report.value = fn(space, c1, c2).value
    report.details = {"depths": [c1.depth, c2.depth]}


def cmd_embed(args: argparse.Namespace, inputs: Inputs, report: CliReport) -> None:
    space = _space(inputs, args.space)
    depth = _depth(args.depth)
    K = compact_from_json(space, inputs.json(args.k))
    L = compact_from_json(space, inputs.json(args.l))
    if args.check == "isometry":
        result = verify_isometry(space, K, L, depth)
    elif args.check == "order":
        result = verify_order_correspondence(space, K, L, depth)
    else:
        if not isinstance(L, FinitePoints):
            raise InputError("the recover universe must be a finite point set")
        result = recover_compact(space, K, L.points, depth)
    report.outcome = "pass" if result.passed else "fail"
    report.details = report_details_json(space, result)


COMMANDS = {
    "space": cmd_space,
    "dist": cmd_dist,
    "hausdorff": cmd_hausdorff,
    "chain": cmd_chain,
    "embed": cmd_embed,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors are input errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    parser = _Parser(prog="hyperball", description="Exact computations on formal balls and hyperspaces.", parents=[common])
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("space", parents=[common], help="check the quasi-metric axioms on a space's sample")
    p.add_argument("space")

    p = sub.add_parser("dist", parents=[common], help="distance between two points or two balls")
    p.add_argument("space")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--variant", choices=["d", "dinv", "dstar", "q"], default="d")

    p = sub.add_parser("hausdorff", parents=[common], help="Hausdorff quasi-distance of two finite point sets")
    p.add_argument("space")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--variant", choices=["plus", "minus", "full"], default="full")

    p = sub.add_parser("chain", parents=[common], help="compare two chain prefixes")
    p.add_argument("space")
    p.add_argument("c1")
    p.add_argument("c2")
    p.add_argument("--op", choices=["leq", "equiv", "waybelow", "D"], default="D")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="depth for compact-set arguments")

    p = sub.add_parser("embed", parents=[common], help="verify the embedding of compact sets")
    p.add_argument("space")
    p.add_argument("k")
    p.add_argument("l", help="second set, or the universe for --check recover")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--check", choices=["isometry", "order", "recover"], default="isometry")
    return parser


def run(argv: Sequence[str]) -> CliReport:
    """Execute one command and return its report without printing."""
    argv = list(argv)
    args = build_parser().parse_args(argv)
    report = CliReport(command=[a for a in argv if a != "--json"])
    inputs = Inputs()
    try:
        COMMANDS[args.cmd](args, inputs, report)
    except (HyperballError, InputError) as exc:
        report.outcome = "error"
        report.value = None
        report.details = {"error": str(exc.args[0]) if exc.args else type(exc).__name__}
        report.exit_code = EXIT_INPUT
    else:
        report.exit_code = EXIT_FAIL if report.outcome == "fail" else EXIT_OK
    report.inputs_digest = inputs.digest()
    return report


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    report = run(argv)
    stream = sys.stderr if report.exit_code == EXIT_INPUT and not as_json else sys.stdout
    print(report.to_json() if as_json else report.to_text(), file=stream)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
