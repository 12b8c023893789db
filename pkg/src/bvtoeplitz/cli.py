"""Command line front end.

Exit codes: 0 success, 1 invalid input, 2 the main answer is undecided at
the requested depth, 3 an internal cross-check failed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import io
from .diagram import ers_row_sums, is_simple, supernatural_of, telescope
from .errors import BVError, InternalInvariantError, NotProperlyOrdered
from .k0 import K0Element, eigenvalue_test, gamma_rational, k0_positivity, max_equicontinuous_factor
from .ordering import OrderedDiagram, is_properly_ordered, telescope_ordered
from .realization import (
    TwoSymmetricSpec,
    cf_to_ers,
    odometer_diagram,
    two_symmetric,
    two_symmetric_alpha,
)
from .toeplitz import (
    DEFAULT_DEPTH,
    empirical_entropy,
    entropy_upper_bound,
    generate_window,
    periodic_structure,
    word_complexity,
    working_level,
)

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN, EXIT_INTERNAL = 0, 1, 2, 3


class Undecided(Exception):
    """Carries a report whose main answer is unknown."""

    def __init__(self, report):
        self.report = report


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise BVError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _load(args) -> OrderedDiagram:
    if (args.input is None) == (args.json is None):
        raise BVError("give exactly one of -i/--input and --json")
    if args.json is not None:
        text = args.json
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise BVError(f"cannot read {args.input}: {e.strerror}") from None
    return io.ordered_from_json(io.loads(text))


def _element(args) -> K0Element:
    if args.vector is None:
        raise BVError("--vector is required")
    return K0Element(args.level if args.level is not None else 0, _ints(args.vector))


# -- subcommands ---------------------------------------------------------------

def cmd_validate(args):
    o = _load(args)
    d = o.diagram
    sums = ers_row_sums(d, args.depth if not d.has_tail else None)
    return {
        "valid": True,
        "levels": d.prefix_length,
        "tail_period": d.period,
        "ers": list(sums.sums) if sums else None,
        "simple": is_simple(d, args.depth).to_json(),
        "properly_ordered": is_properly_ordered(o, args.depth).to_json(),
    }


def cmd_telescope(args):
    if args.cuts is None:
        raise BVError("--cuts is required")
    o = _load(args)
    cuts = _ints(args.cuts)
    telescope(o.diagram, cuts)  # cut validation with the plain diagram errors
    return io.ordered_to_json(telescope_ordered(o, cuts))


def cmd_ers(args):
    d = _load(args).diagram
    rs = ers_row_sums(d, args.depth if not d.has_tail else None)
    out = {
        "row_sums": list(rs.sums) if rs else None,
        "certified": rs.certified,
        "violation": rs.violation,
    }
    if rs and d.has_tail:
        out["supernatural"] = supernatural_of(d).to_json()
    return out


def cmd_toeplitz_gen(args):
    o = _load(args)
    w = generate_window(o, args.N, args.depth)
    if args.format == "json":
        return {"offset": w.offset, "symbols": w.text()}
    return f"offset {w.offset}\n{w.text()}\n"


def cmd_toeplitz_analyze(args):
    report = periodic_structure(_load(args), args.depth)
    out = report.to_json()
    if report.coverage.is_unknown:
        raise Undecided(out)
    return out


def cmd_entropy(args):
    if args.m is None:
        raise BVError("-m is required")
    o = _load(args)
    w = generate_window(o, args.N, args.depth)
    level = args.level if args.level is not None else working_level(o, args.N)
    b = entropy_upper_bound(o, level, args.m)
    return {
        "N": args.N,
        "m": args.m,
        "complexity": word_complexity(w, args.m),
        "empirical_entropy": float(f"{empirical_entropy(w, args.m):.12g}"),
        "bound": {"level": level, "k": b.k, "l": b.l, "exponent": _frac(b.exponent),
                  "rate": _frac(b.rate)},
    }


def cmd_k0_gamma(args):
    d = _load(args).diagram
    g = _element(args)
    val = gamma_rational(d, g, args.depth)
    if val is None:
        raise Undecided({"gamma": None, "depth": max(args.depth, g.level)})
    return {"gamma": _frac(val)}


def cmd_k0_positivity(args):
    d = _load(args).diagram
    sign = k0_positivity(d, _element(args), args.depth)
    out = {"sign": sign.to_json()}
    if sign.is_unknown:
        raise Undecided(out)
    return out


def cmd_k0_eigen(args):
    if args.p is None:
        raise BVError("-p is required")
    d = _load(args).diagram
    return {"eigenvalue": eigenvalue_test(d, args.p)}


def cmd_factor(args):
    return max_equicontinuous_factor(_load(args).diagram).to_json()


def cmd_realize_cf(args):
    if args.coeffs is None:
        raise BVError("--coeffs is required")
    r = cf_to_ers(_ints(args.coeffs))
    return {
        "diagram": io.diagram_to_json(r.diagram()),
        "B": [[list(row) for row in b] for b in r.B[1:]],
        "provenance": r.provenance(),
    }


def cmd_realize_twosym(args):
    if args.l is not None or args.k is not None:
        if args.l is None or args.k is None or args.q is not None or args.r is not None:
            raise BVError("give --l with --k, or --q with --r")
        ls, ks = _ints(args.l), _ints(args.k)
        if len(ls) != len(ks):
            raise BVError("--l and --k differ in length")
        pairs = list(zip(ls, ks))
        spec = TwoSymmetricSpec((), pairs) if args.tail else TwoSymmetricSpec(pairs)
    elif args.q is not None and args.r is not None:
        spec = TwoSymmetricSpec.from_qr(_ints(args.q), _ints(args.r), tail=args.tail)
    else:
        raise BVError("give --l with --k, or --q with --r")
    o = two_symmetric(spec)
    top = len(spec.pairs + spec.tail) + 1
    return {
        "diagram": io.ordered_to_json(o),
        "provenance": {
            "q": [spec.q(n) for n in range(1, top + 1)],
            "r": [spec.r(n) for n in range(2, top + 1)],
            "alpha": two_symmetric_alpha(spec, top).to_json(),
        },
    }


def cmd_odometer(args):
    if args.base is None:
        raise BVError("--base is required")
    base = _ints(args.base)
    o = odometer_diagram([], base) if args.tail else odometer_diagram(base)
    out = {"diagram": io.ordered_to_json(o)}
    if args.tail:
        out["supernatural"] = supernatural_of(o.diagram).to_json()
    return out


COMMANDS = {
    "validate": cmd_validate,
    "telescope": cmd_telescope,
    "ers": cmd_ers,
    "toeplitz-gen": cmd_toeplitz_gen,
    "toeplitz-analyze": cmd_toeplitz_analyze,
    "entropy": cmd_entropy,
    "k0-gamma": cmd_k0_gamma,
    "k0-positivity": cmd_k0_positivity,
    "k0-eigen": cmd_k0_eigen,
    "factor": cmd_factor,
    "realize-cf": cmd_realize_cf,
    "realize-twosym": cmd_realize_twosym,
    "odometer": cmd_odometer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bvtoeplitz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-i", "--input", help="diagram JSON file, or - for stdin")
        p.add_argument("--json", help="diagram JSON given inline")
        p.add_argument("-o", "--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default=None)
        p.add_argument("-N", type=_nonneg, default=8, help="window radius")
        p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
        p.add_argument("--level", type=_nonneg)
        p.add_argument("--vector", help="comma-separated integers; use --vector=-1,2 for a leading minus")
        p.add_argument("-m", type=_positive, help="factor length")
        p.add_argument("-p", type=int, help="eigenvalue denominator")
        p.add_argument("--cuts")
        p.add_argument("--coeffs")
        p.add_argument("--l")
        p.add_argument("--k")
        p.add_argument("--q")
        p.add_argument("--r")
        p.add_argument("--base")
        p.add_argument("--tail", action="store_true", help="the listed values repeat forever")
    return parser


def _render(report, fmt: str | None) -> str:
    if isinstance(report, str):
        return report
    return io.dumps(report) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    code = EXIT_OK
    try:
        report = COMMANDS[args.command](args)
    except Undecided as u:
        report, code = u.report, EXIT_UNKNOWN
    except NotProperlyOrdered as e:
        print(f"error: order is not proper ({e.decision})", file=sys.stderr)
        return EXIT_UNKNOWN if e.decision.is_unknown else EXIT_INPUT
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (BVError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = _render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
