"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 budget exhausted
(the partial result is still printed).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import arith, lab, nimber, poly
from .core import (
    ExtendedBound,
    SignSequence,
    all_sign_sequences,
    from_dyadic,
    parse_surreal,
)
from .dyadic import Dyadic
from .errors import NoRoot, SurrealError
from .genetic import BUILTINS, GeneticEvaluator, builtin

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2, 3

# values such as "-1/2", "-+-" or "-inf,2" would otherwise be read as options
_VALUE_TOKEN = re.compile(r"-(?:[+-]*|(?:\d|inf)[\w/^.,+\-]*)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Budget(Exception):
    pass


# -- argument types -------------------------------------------------------


def _surreal_arg(text: str) -> SignSequence:
    try:
        return parse_surreal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dyadic_arg(text: str) -> Dyadic:
    try:
        return Dyadic.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _signs_arg(text: str) -> SignSequence:
    t = text.strip().replace("−", "-")
    if not re.fullmatch(r"[+-]*", t):
        raise argparse.ArgumentTypeError(f"not a sign sequence: {text!r}")
    return SignSequence(t)


def _bound_arg(text: str) -> ExtendedBound:
    try:
        return ExtendedBound.coerce(text.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _interval_arg(text: str):
    parts = text.strip().split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("interval must be 'a,b'")
    return _bound_arg(parts[0]), _bound_arg(parts[1])


def _poly_arg(text: str) -> poly.SurrealPolynomial:
    try:
        p = poly.SurrealPolynomial.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return p


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return v


def _int_list(text: str) -> List[int]:
    t = text.strip().strip("[]{}")
    try:
        return [int(v) for v in t.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of naturals: {text!r}") from None


def _caps_arg(text: str) -> List[int]:
    """``2,4,8`` or ``a..b`` (step 2) or ``a..b:step``."""
    m = re.fullmatch(r"\s*(\d+)\.\.(\d+)(?::(\d+))?\s*", text)
    if m:
        step = int(m[3]) if m[3] else 2
        return list(range(int(m[1]), int(m[2]) + 1, step))
    return _int_list(text)


def _seed_arg(text: str) -> List[SignSequence]:
    """``birthday:N`` for every number born by day N, else a comma list of values."""
    m = re.fullmatch(r"\s*birthday[:<=]+(\d+)\s*", text)
    if m:
        return list(all_sign_sequences(int(m[1])))
    try:
        return [parse_surreal(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- output ---------------------------------------------------------------


def value_dict(v: SignSequence) -> dict:
    return {"signs": v.signs, "dyadic": str(v.value), "birthday": len(v)}


def _value_text(v: SignSequence) -> str:
    return f"{v.value} [{v.signs}]"


def _root_text(r: poly.RootResult) -> str:
    if r.is_exact:
        return f"exact {_value_text(r.value)}"
    e = r.enclosure
    return f"prefix {r.signs} enclosure ({e.low}, {e.high})"


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, payload, text: str):
        if self.as_json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)


# -- handlers -------------------------------------------------------------


def _cmd_signs(args, out):
    v = from_dyadic(args.value)
    out.emit(value_dict(v), v.signs)


def _cmd_dyadic(args, out):
    v = args.signs
    out.emit(value_dict(v), str(v.value))


def _cmd_eval(args, out):
    params = [args.bind] if args.bind is not None else []
    if args.builtin == "concat_right" and not params:
        raise argparse.ArgumentTypeError("concat_right needs --bind y")
    defn = builtin(args.builtin, *params)
    v = GeneticEvaluator(defn)(*args.args)
    out.emit(value_dict(v), _value_text(v))


def _cmd_arith(args, out):
    fn = {"add": arith.add, "mul": arith.mul, "sub": arith.sub}[args.command]
    v = fn(args.x, args.y)
    out.emit(value_dict(v), _value_text(v))


def _cmd_neg(args, out):
    v = arith.neg(args.x)
    out.emit(value_dict(v), _value_text(v))


def _emit_root(out, r: poly.RootResult, extra: Optional[dict] = None):
    payload = r.to_dict()
    if extra:
        payload.update(extra)
    out.emit(payload, _root_text(r))


def _simplest_root_interval(p, d, max_signs):
    # same choice as poly.simplest_root: least birthday among exact roots, else the smallest root
    pairs = poly.isolate_roots(p, d)
    if not pairs:
        raise NoRoot(f"{p} = {d.value} has no real solution")
    ivs = [(from_dyadic(lo), from_dyadic(hi)) for lo, hi in pairs]
    exact = [iv for iv, (lo, hi) in zip(ivs, pairs) if lo == hi]
    if exact:
        return min(exact, key=lambda iv: (len(iv[0]), iv[0].sort_key))
    return ivs[0]


def _cmd_root(args, out):
    p = args.poly
    d = args.target
    iv = args.interval if args.interval is not None else _simplest_root_interval(p, d, args.max_signs)
    if args.method == "walk":
        r = poly.root_sign_expansion(p, d, iv, args.max_signs)
        _emit_root(out, r)
        return
    search = poly.find_root_genetic(p, d, iv, budget=args.budget)
    payload = search.to_dict()
    out.emit(payload, _root_text(search.result) + f" options {len(search.trace)}")
    if search.budget_exhausted:
        raise _Budget()


def _cmd_recip(args, out):
    _emit_root(out, poly.reciprocal(args.a, args.max_signs))


def _cmd_sqrt(args, out):
    _emit_root(out, poly.sqrt(args.a, args.max_signs))


def _cmd_nim(args, out):
    op = args.nim_command
    if op in ("add", "mul", "pow"):
        if args.b is None:
            raise argparse.ArgumentTypeError(f"nim {op} needs two operands")
        fn = {"add": nimber.nim_add, "mul": nimber.nim_mul, "pow": nimber.nim_pow}[op]
        v = fn(args.a, args.b)
        out.emit({"value": v}, str(v))
    elif op == "inv":
        v = nimber.nim_inverse(args.a)
        out.emit({"value": v}, str(v))
    elif op == "table":
        n = args.size
        if args.reference:
            t = (nimber.mul_table_mex if args.op == "mul" else nimber.add_table_mex)(n)
            rows = [[int(v) for v in row] for row in t]
        else:
            fn = nimber.nim_mul if args.op == "mul" else nimber.nim_add
            rows = [[fn(a, b) for b in range(n)] for a in range(n)]
        out.emit({"op": args.op, "size": n, "table": rows}, "\n".join(" ".join(str(v) for v in r) for r in rows))
    elif op == "subfield":
        v = nimber.is_closed_field_segment(args.n)
        out.emit({"n": args.n, "subfield": v}, "true" if v else "false")
    elif op == "irreducible":
        p = nimber.simplest_irreducible(args.degree, args.coeff_bound, args.root_bound)
        out.emit({"coeffs": list(p.coeffs), "polynomial": str(p)}, str(p))
    elif op == "closure":
        s = sorted(nimber.nim_closure(args.seed, args.ops.split(","), args.cap))
        initial = nimber.is_initial_nim(s)
        out.emit({"closure": s, "initial": initial}, f"{s} initial={'true' if initial else 'false'}")


def _census_defaults(name: str, n: int):
    if name == "concat1":
        samples = []
        for e in lab.concat_sequences(n):
            samples += [e.c, e.a]
        return lab.TWO_THIRDS_SIGNS, samples
    if name == "floor_minus_x":
        samples = [from_dyadic(Dyadic(4 * k + j, 2)) for k in range(n + 1) for j in (1, 3)]
        return from_dyadic(Dyadic(-1, 1)), samples
    return SignSequence(""), sorted(all_sign_sequences(min(n, 8)))


def _cmd_lab(args, out):
    exp = args.lab_command
    if exp == "concat-seq":
        rows = lab.concat_sequences(args.n)
        ok = all(r.ok for r in rows)
        rep = lab.Report(
            "concat_sequences",
            {"n": args.n},
            "all inequalities hold" if ok else "inequality violated",
            [
                {"n": r.n, "a": value_dict(r.a), "b": value_dict(r.b), "c": value_dict(r.c),
                 "failed": [k for k, v in r.checks if not v]}
                for r in rows
            ],
        )
        text = "\n".join(f"{r.n} a={r.a.signs} b={r.b.signs} c={r.c.signs}" for r in rows) + f"\n{rep.verdict}"
        out.emit(rep.to_dict(), text)
    elif exp == "census":
        d_default, samples = _census_defaults(args.f, args.n)
        if args.d is None:
            d = d_default
        elif args.d.strip() == "2/3":
            d = lab.TWO_THIRDS_SIGNS
        else:
            d = parse_surreal(args.d)
        if args.f not in lab.CENSUS_FUNCTIONS:
            raise argparse.ArgumentTypeError(f"unknown census function {args.f!r}")
        rep = lab.sign_change_census(args.f, d, samples).to_report(
            "census", {"f": args.f, "d": str(d) if isinstance(d, lab.TwoThirds) else str(d.value), "n": args.n}
        )
        out.emit(rep.to_dict(), rep.verdict)
    elif exp == "sup-escape":
        rep = lab.sup_escape_experiment(args.caps)
        text = "\n".join(f"cap {w['cap']}: {w['max']['dyadic'] if w['max'] else 'none'}" for w in rep.witnesses)
        out.emit(rep.to_dict(), text + f"\n{rep.verdict}")
    elif exp == "initiality":
        rep = lab.initiality_report(args.seed, args.ops.split(","), args.cap)
        out.emit(rep.to_dict(), rep.verdict)


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seedless", action="store_true", default=argparse.SUPPRESS,
                        help="accepted for scripts; every command is already deterministic")

    p = _Parser(prog="surreal", description="Finite surreal numbers, genetic definitions and nimbers.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("signs", parents=[common], help="sign sequence of a dyadic")
    s.add_argument("value", type=_dyadic_arg)
    s.set_defaults(func=_cmd_signs)

    s = sub.add_parser("dyadic", parents=[common], help="dyadic value of a sign sequence")
    s.add_argument("signs", type=_signs_arg)
    s.set_defaults(func=_cmd_dyadic)

    s = sub.add_parser("eval", parents=[common], help="evaluate a catalog definition")
    s.add_argument("builtin", choices=BUILTINS)
    s.add_argument("args", nargs="+", type=_surreal_arg)
    s.add_argument("--bind", type=_surreal_arg, help="fixed right operand for concat_right")
    s.set_defaults(func=_cmd_eval)

    for name in ("add", "mul", "sub"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("x", type=_surreal_arg)
        s.add_argument("y", type=_surreal_arg)
        s.set_defaults(func=_cmd_arith)
    s = sub.add_parser("neg", parents=[common])
    s.add_argument("x", type=_surreal_arg)
    s.set_defaults(func=_cmd_neg)

    s = sub.add_parser("root", parents=[common], help="solve p(x) = d")
    s.add_argument("--poly", required=True, type=_poly_arg, help="coefficients lowest first, e.g. [-2,0,1]")
    s.add_argument("--target", type=_surreal_arg, default=SignSequence(""))
    s.add_argument("--interval", type=_interval_arg)
    s.add_argument("--max-signs", type=_nat, default=32)
    s.add_argument("--method", choices=("walk", "genetic"), default="walk")
    s.add_argument("--budget", type=_nat, default=32)
    s.set_defaults(func=_cmd_root)

    for name, fn in (("recip", _cmd_recip), ("sqrt", _cmd_sqrt)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("a", type=_surreal_arg)
        s.add_argument("--max-signs", type=_nat, default=32)
        s.set_defaults(func=fn)

    nim = sub.add_parser("nim", parents=[common], help="nimber arithmetic")
    nsub = nim.add_subparsers(dest="nim_command", required=True, parser_class=_Parser)
    for name in ("add", "mul", "pow"):
        s = nsub.add_parser(name, parents=[common])
        s.add_argument("a", type=_nat)
        s.add_argument("b", type=_nat, nargs="?")
    s = nsub.add_parser("inv", parents=[common])
    s.add_argument("a", type=_nat)
    s = nsub.add_parser("table", parents=[common])
    s.add_argument("--op", choices=("add", "mul"), default="mul")
    s.add_argument("--size", type=_nat, default=16)
    s.add_argument("--reference", action="store_true", help="use the mex recursion")
    s = nsub.add_parser("subfield", parents=[common])
    s.add_argument("n", type=_nat)
    s = nsub.add_parser("irreducible", parents=[common])
    s.add_argument("--degree", type=_nat, default=3)
    s.add_argument("--coeff-bound", type=_nat, default=4)
    s.add_argument("--root-bound", type=_nat, default=1 << 16)
    s = nsub.add_parser("closure", parents=[common])
    s.add_argument("seed", type=_int_list)
    s.add_argument("--ops", default="add,mul")
    s.add_argument("--cap", type=_nat, default=256)
    nim.set_defaults(func=_cmd_nim)

    lp = sub.add_parser("lab", parents=[common], help="experiments")
    lsub = lp.add_subparsers(dest="lab_command", required=True, parser_class=_Parser)
    s = lsub.add_parser("concat-seq", parents=[common])
    s.add_argument("--n", type=_nat, default=20)
    s = lsub.add_parser("census", parents=[common])
    s.add_argument("--f", default="concat1", help=", ".join(lab.CENSUS_FUNCTIONS))
    s.add_argument("--d", help="level, or 2/3")
    s.add_argument("--n", type=_nat, default=20)
    s = lsub.add_parser("sup-escape", parents=[common])
    s.add_argument("--caps", type=_caps_arg, default=list(range(2, 17, 2)), help="2,4,8 or 2..16 (step 2)")
    s = lsub.add_parser("initiality", parents=[common])
    s.add_argument("--seed", type=_seed_arg, default=list(all_sign_sequences(2)), help="birthday:N or a comma list")
    s.add_argument("--ops", default="add")
    s.add_argument("--cap", type=_nat, default=5)
    lp.set_defaults(func=_cmd_lab)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = [" " + a if _VALUE_TOKEN.fullmatch(a) else a for a in argv]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(getattr(args, "json", False))
    try:
        args.func(args, out)
    except _Budget:
        return EXIT_BUDGET
    except argparse.ArgumentTypeError as exc:
        print(f"surreal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SurrealError, ZeroDivisionError, ArithmeticError, ValueError) as exc:
        print(f"surreal: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
