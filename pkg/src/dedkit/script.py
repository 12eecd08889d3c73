"""Line-oriented deduction scripts.

::

    # comment
    sig P/0 Q/0 R/1 c/0
    hyp P
    step P ; hyp 1
    step (P -> (Q -> P)) ; axiom
    step (Q -> P) ; mp 1 2

A file with only ``sig`` and ``hyp`` lines is a theory.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import ParseError
from .kernel import MP, Axiom, Deduction, Gen, Hyp, Step
from .syntax import Signature, parse_formula, print_formula


@dataclass(frozen=True)
class Script:
    sig: Signature
    hypotheses: tuple
    steps: tuple

    def deduction(self) -> Deduction:
        if not self.steps:
            raise ParseError("script has no step lines")
        return Deduction(self.sig, self.hypotheses, self.steps)


def _justification(text, lineno):
    words = text.split()
    if not words:
        raise ParseError(f"line {lineno}: missing justification")
    kind, args = words[0].lower(), words[1:]
    try:
        if kind == "axiom" and not args:
            return Axiom()
        if kind == "hyp" and len(args) == 1:
            return Hyp(int(args[0]))
        if kind == "mp" and len(args) == 2:
            return MP(int(args[0]), int(args[1]))
        if kind == "gen" and len(args) == 2:
            return Gen(int(args[0]), args[1])
    except ValueError:
        pass
    raise ParseError(f"line {lineno}: bad justification {text.strip()!r}")


def parse_script(text: str, sig: Optional[Signature] = None) -> Script:
    hyps, steps = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "sig":
            if sig is not None:
                raise ParseError(f"line {lineno}: duplicate sig line")
            sig = Signature.parse(rest)
            continue
        if sig is None:
            raise ParseError(f"line {lineno}: sig line must come first")
        try:
            if keyword == "hyp":
                if steps:
                    raise ParseError("hyp lines must precede step lines")
                hyps.append(parse_formula(rest, sig))
            elif keyword == "step":
                formula, sep, just = rest.rpartition(";")
                if not sep:
                    raise ParseError("step needs '; <justification>'")
                steps.append(Step(parse_formula(formula, sig), _justification(just, lineno)))
            else:
                raise ParseError(f"unknown keyword {keyword!r}")
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    if sig is None:
        raise ParseError("no sig line")
    return Script(sig, tuple(hyps), tuple(steps))


def load_script(path) -> Script:
    return parse_script(Path(path).read_text())


def format_script(d: Deduction, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"sig {d.sig}")
    lines += [f"hyp {print_formula(h)}" for h in d.hypotheses]
    lines += [f"step {print_formula(s.formula)} ; {s.justification}" for s in d.steps]
    return "\n".join(lines) + "\n"
