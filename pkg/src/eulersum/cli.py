"""Command-line front end.

Subcommands map one-to-one onto the library: ``eval`` and ``check`` drive
the expression calculus and the identity-database runner, ``dual``,
``shuffle``, ``stuffle``, ``reduce``, and ``solve-transform`` expose the
symbolic calculi, ``qeval``, ``int``, and ``conjecture`` the numeric
engines.  Precision resolution: ``--digits`` flag, then the
EULERSUM_DIGITS environment variable, then 30.  Exit codes: 0 success /
all pass, 1 any failed check, 2 bad input or evaluation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from mpmath import mp, mpf

from .compositions import parse_composition, stuffle
from .errors import EulersumError
from .expressions import eval_expr, parse, render
from .precision import PrecisionContext
from .qzeta import eval_qmzv
from .quadrature import catalog_ids, integrate
from .runner import conjecture_check, run_check
from .symbolic import (drinfeld_expand, drinfeld_relation, euler_decomposition,
                       euler_reduction, witten_reduce)
from .words import (TRANSFORMS, Word, WordPolynomial, apply_transform,
                    dualize, shuffle, solve_transform_coeffs)

_DEFAULT_DIGITS = 30


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help="target decimal digits (default: EULERSUM_DIGITS or 30)")
    common.add_argument("--max-terms", type=int, default=None,
                        help="series term budget per evaluation")

    top = argparse.ArgumentParser(
        prog="eulersum",
        description="verification workbench for nested harmonic sums")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate an expression to a certified ball")
    p.add_argument("expression")
    p.add_argument("--tol", default=None,
                   help="fail (exit 1) if the radius exceeds this")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", parents=[common],
                       help="run an identity database")
    p.add_argument("file", help="identity file path (shipped databases "
                                "resolve by bare name, e.g. paper.ids)")
    p.add_argument("--jobs", type=int, default=1,
                   help="evaluate entries in this many processes")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dual", help="dual composition, exactly")
    p.add_argument("composition", help="e.g. \"(2,1)\"")

    p = sub.add_parser("shuffle", help="shuffle product of two words")
    p.add_argument("u", help="word over {a,b,c}, e.g. ab")
    p.add_argument("v")

    p = sub.add_parser("stuffle", help="stuffle product of two compositions")
    p.add_argument("u", help="e.g. \"(2)\"")
    p.add_argument("v", help="e.g. \"(-1)\"")

    p = sub.add_parser("reduce", help="exact reduction families")
    p.add_argument("family",
                   choices=("euler", "decomposition", "drinfeld", "witten"))
    p.add_argument("args", type=int, nargs="+",
                   help="euler M | decomposition S T | drinfeld M N | witten R S T")

    p = sub.add_parser("qeval", parents=[common],
                       help="evaluate a q-deformed nested sum")
    p.add_argument("q", help="rational modulus in (0,1), e.g. 0.5 or 1/2")
    p.add_argument("composition", help="e.g. \"(2,1)\"")

    p = sub.add_parser("int", parents=[common],
                       help="evaluate a catalog integral")
    p.add_argument("entry", choices=sorted(catalog_ids()))
    p.add_argument("--tol", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("conjecture", parents=[common],
                       help="probe the open repeated-block question")
    p.add_argument("n", type=int, help="repetition level, 1..3")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("solve-transform",
                       help="express a word in transforms of another")
    p.add_argument("target", help="target word, e.g. acc")
    p.add_argument("source", help="source word, e.g. abb")
    p.add_argument("--transforms",
                   default="identity,sumsigns,landen,quadlanden",
                   help=f"comma-separated subset of {','.join(TRANSFORMS)}")
    return top


def _context(args) -> PrecisionContext:
    digits = getattr(args, "digits", None)
    if digits is None:
        env = os.environ.get("EULERSUM_DIGITS", "").strip()
        digits = int(env) if env else _DEFAULT_DIGITS
    kwargs = {"target_digits": digits}
    if getattr(args, "max_terms", None):
        kwargs["max_terms"] = args.max_terms
    return PrecisionContext(**kwargs)


def _nstr(x, digits: int) -> str:
    return mp.nstr(mpf(x), digits, strip_zeros=True)


def _ball_text(b, ctx: PrecisionContext) -> str:
    tag = " (empirical)" if b.empirical else ""
    return f"{_nstr(b.mid, ctx.target_digits)} +- {_nstr(b.rad, 3)}{tag}"


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


# ----------------------------------------------------------------------
# handlers

def _cmd_eval(args) -> int:
    ctx = _context(args)
    expr = parse(args.expression)
    rendered = render(expr)
    started = time.perf_counter()
    ball = eval_expr(expr, ctx)
    ms = round((time.perf_counter() - started) * 1000.0, 3)
    over = args.tol is not None and ball.rad > mpf(args.tol)
    if args.json:
        _emit({"entry": rendered, "value": _nstr(ball.mid, ctx.target_digits),
               "radius": _nstr(ball.rad, 8), "empirical": ball.empirical,
               "ms": ms})
    else:
        print(f"{rendered} = {_ball_text(ball, ctx)}")
    return 1 if over else 0


def _resolve_database(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    shipped = resources.files("eulersum").joinpath("data").joinpath(name)
    if shipped.is_file():
        return Path(str(shipped))
    raise EulersumError(f"no identity file {name!r} on disk or shipped")


def _cmd_check(args) -> int:
    report = run_check(_resolve_database(args.file), _context(args),
                       jobs=args.jobs)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code


def _cmd_dual(args) -> int:
    print(dualize(parse_composition(args.composition)).render())
    return 0


def _cmd_shuffle(args) -> int:
    print(shuffle(Word(args.u), Word(args.v)).render())
    return 0


def _cmd_stuffle(args) -> int:
    print(stuffle(parse_composition(args.u), parse_composition(args.v)).render())
    return 0


def _cmd_reduce(args) -> int:
    family, values = args.family, args.args
    arity = {"euler": 1, "decomposition": 2, "drinfeld": 2, "witten": 3}
    if len(values) != arity[family]:
        raise EulersumError(
            f"reduce {family} takes {arity[family]} integer(s), got {len(values)}")
    if family == "euler":
        print(euler_reduction(values[0]).render())
    elif family == "decomposition":
        print(euler_decomposition(values[0], values[1]).render())
    elif family == "witten":
        r, s, t = values
        print(f"witten({r},{s},{t}) == {witten_reduce(r, s, t).render()}")
    else:
        table = drinfeld_expand(values[0], values[1])
        for m, n in sorted(table):
            print(drinfeld_relation(m, n, table).render())
    return 0


def _cmd_qeval(args) -> int:
    ctx = _context(args)
    ball = eval_qmzv(Fraction(args.q), parse_composition(args.composition), ctx)
    print(_ball_text(ball, ctx))
    return 0


def _cmd_int(args) -> int:
    ctx = _context(args)
    started = time.perf_counter()
    ball = integrate(args.entry, tol=None if args.tol is None else mpf(args.tol),
                     ctx=ctx)
    ms = round((time.perf_counter() - started) * 1000.0, 3)
    if args.json:
        _emit({"entry": f"int({args.entry})",
               "value": _nstr(ball.mid, ctx.target_digits),
               "radius": _nstr(ball.rad, 8), "empirical": ball.empirical,
               "ms": ms})
    else:
        print(f"int({args.entry}) = {_ball_text(ball, ctx)}")
    return 0


def _cmd_conjecture(args) -> int:
    outcome = conjecture_check(args.n, _context(args))
    if args.json:
        _emit(outcome.as_dict())
    else:
        print(f"{outcome.entry}: {outcome.verdict} "
              f"(residual {outcome.residual}, radius {outcome.radius}, "
              f"{outcome.detail})")
    return 0 if outcome.verdict == "empirical-pass" else 1


def _cmd_solve_transform(args) -> int:
    names = [t.strip() for t in args.transforms.split(",") if t.strip()]
    for name in names:
        if name not in TRANSFORMS:
            raise EulersumError(f"unknown transform {name!r}; "
                                f"choose from {', '.join(TRANSFORMS)}")
    basis = [apply_transform(name, Word(args.source)) for name in names]
    target = WordPolynomial.single(Word(args.target))
    coeffs = solve_transform_coeffs(target, basis)
    width = max(len(n) for n in names)
    for name, coeff in zip(names, coeffs):
        print(f"{name:{width}s}  {coeff}")
    return 0


_HANDLERS = {
    "eval": _cmd_eval,
    "check": _cmd_check,
    "dual": _cmd_dual,
    "shuffle": _cmd_shuffle,
    "stuffle": _cmd_stuffle,
    "reduce": _cmd_reduce,
    "qeval": _cmd_qeval,
    "int": _cmd_int,
    "conjecture": _cmd_conjecture,
    "solve-transform": _cmd_solve_transform,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except EulersumError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
