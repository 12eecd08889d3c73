"""Command-line front end.

Exit status: 0 success / true / no counterexample, 1 false / counterexample /
nothing found, 2 usage or input error.  Results go to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dedthm, godel, models
from .errors import LogicError
from .kernel import verify_deduction
from .script import format_script, load_script
from .search import search_deduction
from .syntax import parse_formula, print_formula


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _number(text):
    try:
        return godel.GodelNumber.parse(text)
    except LogicError:
        # Not a sequence code; keep the raw natural so relations can still say "false".
        if text.strip().isdigit():
            return int(text)
        raise


def _deduction(path):
    return load_script(path).deduction()


def cmd_check(args):
    d = _deduction(args.file)
    verdict = verify_deduction(d)
    if verdict:
        n = len(d.steps)
        print(f"ok ({n} step{'s' if n != 1 else ''})")
        return 0
    print(verdict)
    return 1


def cmd_discharge(args):
    d = _deduction(args.file)
    d = dedthm.move_hypothesis_last(d, args.hyp)
    out = dedthm.discharge(d, d.hypotheses[-1])
    _write(format_script(out), args.output)
    return 0


def cmd_undischarge(args):
    d = _deduction(args.file)
    out = dedthm.undischarge(d, parse_formula(args.ante, d.sig))
    _write(format_script(out), args.output)
    return 0


def cmd_concat(args):
    out = dedthm.concat(_deduction(args.first), _deduction(args.second))
    _write(format_script(out), args.output)
    return 0


def cmd_weaken(args):
    d = _deduction(args.file)
    out = dedthm.weaken(d, parse_formula(args.add, d.sig))
    _write(format_script(out), args.output)
    return 0


def cmd_encode(args):
    d = _deduction(args.file)
    verdict = verify_deduction(d)
    if not verdict:
        raise LogicError(f"refusing to encode an invalid deduction: {verdict}")
    print(godel.encode_deduction(d))
    return 0


def cmd_decode(args):
    sig = load_script(args.sig).sig
    n = godel.GodelNumber.parse(args.number)
    if args.kind in ("auto", "formula"):
        try:
            print(print_formula(godel.decode_formula(n, sig)))
            return 0
        except LogicError:
            if args.kind == "formula":
                raise
    for f in godel.decode_sequence(n, sig):
        print(print_formula(f))
    return 0


def cmd_proofcheck(args):
    theory = load_script(args.theory)
    ok = godel.proof_check(_number(args.x), _number(args.y), theory.hypotheses, theory.sig)
    print("true" if ok else "false")
    return 0 if ok else 1


def cmd_search(args):
    theory = load_script(args.theory)
    goal = parse_formula(args.goal, theory.sig)
    found = search_deduction(goal, theory.hypotheses, theory.sig, args.max_len, args.pool_depth)
    if found is None:
        print("none")
        return 1
    d, number = found
    sys.stdout.write(format_script(d, comments=[f"godel-number {number}"]))
    return 0


def cmd_transport_discharge(args):
    theory = load_script(args.theory)
    a = parse_formula(args.hyp, theory.sig)
    print(godel.transport_discharge(_number(args.x), a, theory.hypotheses, theory.sig))
    return 0


def cmd_transport_weaken(args):
    theory = load_script(args.theory)
    a = parse_formula(args.add, theory.sig)
    print(godel.transport_weaken(_number(args.u), a, theory.hypotheses, theory.sig))
    return 0


def cmd_entail(args):
    theory = load_script(args.theory)
    goal = parse_formula(args.goal, theory.sig)
    m = models.check_entailment(theory.hypotheses, goal, theory.sig, args.max_size)
    if m is None:
        print(f"no counterexample (domain sizes 1..{args.max_size})")
        return 0
    sys.stdout.write(m.describe())
    return 1


def cmd_selfimp(args):
    sig = load_script(args.sig).sig
    d = dedthm.prove_self_implication(parse_formula(args.formula, sig), sig)
    _write(format_script(d), args.output)
    return 0


def cmd_codes(args):
    sys.stdout.write(godel.symbol_code(load_script(args.sig).sig).dump())
    return 0


def build_parser():
    p = _Parser(prog="dedkit", description="Hilbert-style proof kernel and Gödel coding toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="verify a deduction script")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("discharge", help="deduction theorem: move a hypothesis into the conclusion")
    s.add_argument("file")
    s.add_argument("--hyp", type=int, required=True, help="1-based hypothesis index")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("undischarge", help="converse of discharge")
    s.add_argument("file")
    s.add_argument("--ante", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_undischarge)

    s = sub.add_parser("concat", help="chain a proof of A with a proof that assumes A")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_concat)

    s = sub.add_parser("weaken", help="add a closed hypothesis")
    s.add_argument("file")
    s.add_argument("--add", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_weaken)

    s = sub.add_parser("encode", help="Gödel number of a deduction")
    s.add_argument("file")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="formula or formula sequence coded by a number")
    s.add_argument("--number", required=True)
    s.add_argument("--sig", required=True, help="file with a sig line")
    s.add_argument("--kind", choices=("auto", "formula", "deduction"), default="auto")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("proofcheck", help="does x code a deduction from the theory of the formula coded by y?")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_proofcheck)

    s = sub.add_parser("search", help="bounded search for a deduction")
    s.add_argument("--goal", required=True)
    s.add_argument("--theory", required=True)
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--pool-depth", type=int, required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("transport-discharge", help="witness for (T, A) |- B to witness for T |- A -> B")
    s.add_argument("--x", required=True)
    s.add_argument("--hyp", required=True)
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_transport_discharge)

    s = sub.add_parser("transport-weaken", help="witness for T |- B to witness for T |- A -> B")
    s.add_argument("--u", required=True)
    s.add_argument("--add", required=True)
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_transport_weaken)

    s = sub.add_parser("entail", help="look for a finite countermodel")
    s.add_argument("--theory", required=True)
    s.add_argument("--goal", required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.set_defaults(func=cmd_entail)

    s = sub.add_parser("selfimp", help="the five-line proof of F -> F")
    s.add_argument("--formula", required=True)
    s.add_argument("--sig", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_selfimp)

    s = sub.add_parser("codes", help="dump the symbol code table of a signature")
    s.add_argument("--sig", required=True)
    s.set_defaults(func=cmd_codes)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"dedkit: {e}", file=sys.stderr)
        return 2
    except (LogicError, OSError, ValueError, OverflowError) as e:
        print(f"dedkit: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
