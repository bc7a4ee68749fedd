"""Command-line front end.

Exit status: 0 computed and affirmative, 1 computed and negative (or the
input violates the capacity axioms), 2 usage or parse error. On exit 0 or
1 standard output holds exactly one JSON document; diagnostics go to
standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .balance import Balanced, check_balanced, core_element_generated
from .domain import DEFAULT_MAX_N, GeneratedCapacity, realize
from .errors import BalcapError, CapacityError
from .functor import monad_mult, pushforward, repro_counterexample
from .integrals import TNorm, choquet, tnorm_integral


class UsageError(Exception):
    pass


def _dense(game, max_n):
    if isinstance(game, GeneratedCapacity):
        return realize(game, max_n)
    return game


def _load_game(args):
    return jsonio.game_from_doc(jsonio.load_json(args.game), max_n=args.max_n)


def cmd_validate(args):
    game = _load_game(args)
    kind = "generators" if isinstance(game, GeneratedCapacity) else "capacity"
    if kind == "generators":
        realize(game, args.max_n)
    return 0, {"valid": True, "kind": kind, "labels": list(game.ground.labels)}


def cmd_balanced(args):
    nu = _dense(_load_game(args), args.max_n)
    verdict = check_balanced(nu, trace=args.trace)
    return (0 if isinstance(verdict, Balanced) else 1), jsonio.verdict_to_doc(verdict)


def cmd_core(args):
    game = _load_game(args)
    if isinstance(game, GeneratedCapacity):
        mu = core_element_generated(game, trace=args.trace)
    else:
        verdict = check_balanced(game, trace=args.trace)
        mu = verdict.witness if isinstance(verdict, Balanced) else None
    if mu is None:
        return 1, {"core_element": None}
    return 0, {"core_element": jsonio.measure_to_doc(mu)}


def cmd_choquet(args):
    nu = _dense(_load_game(args), args.max_n)
    f = jsonio.function_from_doc(jsonio.load_json(args.function), nu.ground)
    return 0, {"value": jsonio.render_rational(choquet(nu, f))}


def cmd_integral(args):
    nu = _dense(_load_game(args), args.max_n)
    f = jsonio.function_from_doc(jsonio.load_json(args.function), nu.ground)
    tnorm = TNorm(args.tnorm)
    return 0, {"tnorm": tnorm.value, "value": jsonio.render_rational(tnorm_integral(nu, f, tnorm))}


def cmd_pushforward(args):
    nu = _dense(_load_game(args), args.max_n)
    fmap = jsonio.map_from_doc(jsonio.load_json(args.map), nu.ground, max_n=args.max_n)
    return 0, jsonio.capacity_to_doc(pushforward(fmap, nu))


def cmd_monad(args):
    big = jsonio.second_level_from_doc(jsonio.load_json(args.second_level), max_n=args.max_n)
    return 0, jsonio.capacity_to_doc(monad_mult(big))


def cmd_repro(args):
    report = repro_counterexample()
    return (0 if all(c["pass"] for c in report["checks"]) else 1), report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balcap",
        description="Balancedness, cores and integrals of capacities on finite sets.")
    parser.add_argument("--dump-lp", metavar="PATH",
                        help="write the simplex tableaux of balanced/core solves to PATH as JSON")
    parser.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, metavar="N",
                        help=f"largest ground set accepted (default {DEFAULT_MAX_N})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file against the capacity axioms")
    p.add_argument("game")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("balanced", help="decide balancedness with a certificate")
    p.add_argument("game")
    p.set_defaults(func=cmd_balanced)

    p = sub.add_parser("core", help="find a core element")
    p.add_argument("game")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("choquet", help="Choquet integral of a function")
    p.add_argument("game")
    p.add_argument("function")
    p.set_defaults(func=cmd_choquet)

    p = sub.add_parser("integral", help="t-normed integral of a function")
    p.add_argument("game")
    p.add_argument("function")
    p.add_argument("--tnorm", choices=[t.value for t in TNorm], default="min")
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("pushforward", help="image capacity along a point map")
    p.add_argument("game")
    p.add_argument("map")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("monad", help="monad multiplication of a second-level capacity")
    p.add_argument("second_level")
    p.set_defaults(func=cmd_monad)

    p = sub.add_parser("repro-paper", help="replay the non-submonad counterexample")
    p.set_defaults(func=cmd_repro)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_n < 1:
        print("balcap: --max-n must be positive", file=sys.stderr)
        return 2
    if args.max_n > DEFAULT_MAX_N:
        print(f"balcap: warning: dense tables up to 2^{args.max_n} entries may exhaust memory",
              file=sys.stderr)
    args.trace = [] if args.dump_lp else None
    try:
        code, doc = args.func(args)
    except CapacityError as exc:
        print(f"balcap: {exc}", file=sys.stderr)
        code, doc = 1, {"valid": False, "error": str(exc)}
    except BalcapError as exc:
        print(f"balcap: {exc}", file=sys.stderr)
        return 2
    if args.dump_lp:
        with open(args.dump_lp, "w", encoding="utf-8") as fh:
            json.dump({"tableaux": args.trace}, fh, indent=2)
    sys.stdout.write(jsonio.dumps(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
