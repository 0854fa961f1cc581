"""Command line front end; every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebraic import annihilator, verify_annihilator
from .dwork import are_congruent, coefficient_class, series_mod_p
from .errors import InvalidArgument, MathematicalRefusal, PfqError
from .evaluation import eval_padic
from .exact_arith import format_rational, parse_rational
from .newton import newton_polygon
from .oracle import coefficients, truncated_profile
from .primes import good_reduction_set
from .valuation import drifted_valuation
from .zigzag import HParams

EXIT_OK, EXIT_REFUSAL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgument(message)


def parse_list(text: str, flag: str) -> tuple:
    out = []
    for pos, item in enumerate(text.split(",") if text.strip() else [], start=1):
        try:
            out.append(parse_rational(item))
        except InvalidArgument as exc:
            raise InvalidArgument(f"{flag}: entry {pos} ({item!r}) is not a rational") from exc
    return tuple(out)


def _params(top: str, bottom: str, prefix: str = "") -> HParams:
    return HParams(parse_list(top, f"--{prefix}top"), parse_list(bottom, f"--{prefix}bottom"))


def _rational(text: str):
    return parse_rational(text)


def _cmd_valuation(args):
    dv = drifted_valuation(_params(args.top, args.bottom), args.p, args.nu)
    out = {"value": format_rational(dv.value)}
    if dv.argmin is not None:
        out["argmin"] = dv.argmin
    return out


def _cmd_newton(args):
    return newton_polygon(_params(args.top, args.bottom), args.p, args.nu1).to_json()


def _cmd_eval(args):
    return eval_padic(_params(args.top, args.bottom), args.p, args.a, args.N, args.nu).to_json()


def _cmd_good_primes(args):
    return good_reduction_set(_params(args.top, args.bottom), verify=args.verify).to_json()


def _cmd_series_mod(args):
    return series_mod_p(_params(args.top, args.bottom), args.p, args.K)


def _cmd_coeff_class(args):
    cls = coefficient_class(_params(args.top, args.bottom), args.p, args.N)
    return {"valuation": cls.valuation, "unit": cls.unit}


def _cmd_annihilator(args):
    params = _params(args.top, args.bottom)
    rel = annihilator(params, args.p)
    out = rel.to_json()
    if args.verify is not None:
        out["verified"] = verify_annihilator(rel, params, args.verify)
    return out


def _cmd_congruent(args):
    a = _params(args.a_top, args.a_bottom, "a-")
    b = _params(args.b_top, args.b_bottom, "b-")
    return {"congruent": are_congruent(a, b, args.p)}


def _cmd_oracle(args):
    params = _params(args.top, args.bottom)
    if args.kind == "coefficients":
        return [format_rational(c) for c in coefficients(params, args.K)]
    if args.p is None:
        raise InvalidArgument("oracle profile needs -p")
    value, argmin = truncated_profile(params, args.p, args.nu, args.K)
    return {"min": format_rational(value), "argmin": argmin}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    series = _Parser(add_help=False)
    series.add_argument("--top", default="", help="comma separated top parameters")
    series.add_argument("--bottom", default="", help="comma separated bottom parameters")

    prime = _Parser(add_help=False)
    prime.add_argument("-p", type=int, required=True, help="a prime")

    parser = _Parser(prog="pfq", description="p-adic analysis of hypergeometric series")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cmd = sub.add_parser("valuation", parents=[common, series, prime], help="drifted valuation")
    cmd.add_argument("--nu", type=_rational, default=parse_rational(0))
    cmd.set_defaults(run=_cmd_valuation)

    cmd = sub.add_parser("newton", parents=[common, series, prime], help="Newton polygon")
    cmd.add_argument("--nu1", type=_rational, default=None)
    cmd.set_defaults(run=_cmd_newton)

    cmd = sub.add_parser("eval", parents=[common, series, prime], help="p-adic evaluation")
    cmd.add_argument("-a", type=_rational, required=True)
    cmd.add_argument("-N", type=int, required=True)
    cmd.add_argument("--nu", type=_rational, default=None)
    cmd.set_defaults(run=_cmd_eval)

    cmd = sub.add_parser("good-primes", parents=[common, series], help="good reduction primes")
    cmd.add_argument("--verify", action="store_true", help="test a second prime per class")
    cmd.set_defaults(run=_cmd_good_primes)

    cmd = sub.add_parser("series-mod", parents=[common, series, prime], help="series mod p")
    cmd.add_argument("-K", type=int, required=True)
    cmd.set_defaults(run=_cmd_series_mod)

    cmd = sub.add_parser("coeff-class", parents=[common, series, prime], help="class of h_N")
    cmd.add_argument("-N", type=int, required=True)
    cmd.set_defaults(run=_cmd_coeff_class)

    cmd = sub.add_parser("annihilator", parents=[common, series, prime], help="annihilating relation")
    cmd.add_argument("--verify", type=int, default=None, metavar="K")
    cmd.set_defaults(run=_cmd_annihilator)

    cmd = sub.add_parser("congruent", parents=[common, prime], help="compare two series mod p")
    cmd.add_argument("--a-top", default="")
    cmd.add_argument("--a-bottom", default="")
    cmd.add_argument("--b-top", default="")
    cmd.add_argument("--b-bottom", default="")
    cmd.set_defaults(run=_cmd_congruent)

    cmd = sub.add_parser("oracle", parents=[common, series], help="brute-force reference values")
    cmd.add_argument("--kind", choices=("coefficients", "profile"), default="coefficients")
    cmd.add_argument("-K", type=int, required=True)
    cmd.add_argument("-p", type=int, default=None)
    cmd.add_argument("--nu", type=_rational, default=parse_rational(0))
    cmd.set_defaults(run=_cmd_oracle)
    return parser


def render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, separators=(",", ":"))
    if isinstance(data, dict):
        return "\n".join(
            f"{key}: {value if isinstance(value, str) else json.dumps(value, separators=(',', ':'))}"
            for key, value in data.items()
        )
    if isinstance(data, list):
        return " ".join(str(x) for x in data)
    return str(data)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help(out)
        return EXIT_OK if argv else EXIT_USAGE
    try:
        args = parser.parse_args(argv)
        data = args.run(args)
    except SystemExit as exc:  # --help inside a subcommand
        return EXIT_OK if not exc.code else EXIT_USAGE
    except MathematicalRefusal as exc:
        print(f"refused: {exc}", file=err)
        return EXIT_REFUSAL
    except InvalidArgument as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except PfqError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_REFUSAL
    print(render(data, args.format), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
