"""The trusted core: axiom schemas, MP and Gen, and the deduction checker.

Axiom schemas (B, C, D formulas, x a variable, t a term)::

    A1  B -> (C -> B)
    A2  (B -> (C -> D)) -> ((B -> C) -> (B -> D))
    A3  (~C -> ~B) -> ((~C -> B) -> C)
    A4  (A x) B -> B[x:=t]             t free for x in B
    A5  (A x)(B -> C) -> (B -> (A x) C)  x not free in B

Generalisation is refused on any variable free in a hypothesis.  Everything
else in the package produces deductions that are re-checked here.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import JustificationError, LogicError
from .syntax import (
    App, Atom, ForAll, Formula, Implies, Not, Signature, Var,
    check_formula, free_vars, is_free_for, print_formula,
)


@dataclass(frozen=True)
class Axiom:
    def __str__(self):
        return "axiom"


@dataclass(frozen=True)
class Hyp:
    index: int

    def __str__(self):
        return f"hyp {self.index}"


@dataclass(frozen=True)
class MP:
    """Modus ponens: step ``minor`` is B, step ``major`` is B -> C."""
    minor: int
    major: int

    def __str__(self):
        return f"mp {self.minor} {self.major}"


@dataclass(frozen=True)
class Gen:
    premise: int
    var: str

    def __str__(self):
        return f"gen {self.premise} {self.var}"


Justification = Union[Axiom, Hyp, MP, Gen]


@dataclass(frozen=True)
class Step:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Deduction:
    sig: Signature
    hypotheses: tuple
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].formula

    @property
    def formulas(self) -> list:
        return [s.formula for s in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"failure at step {self.step}: {self.reason}"


OK = Verdict(True)


# -- schema recognisers ----------------------------------------------------

def _is_a1(f):
    return (isinstance(f, Implies) and isinstance(f.right, Implies)
            and f.left == f.right.right)


def _is_a2(f):
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)
            and isinstance(f.left.right, Implies) and isinstance(f.right, Implies)):
        return False
    b, c, d = f.left.left, f.left.right.left, f.left.right.right
    return f.right == Implies(Implies(b, c), Implies(b, d))


def _is_a3(f):
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)
            and isinstance(f.left.left, Not) and isinstance(f.left.right, Not)):
        return False
    c, b = f.left.left.body, f.left.right.body
    return f.right == Implies(Implies(Not(c), b), c)


_NO_MATCH = object()


def _match_term(s, s2, x, bound, found):
    # ``found`` is a one-slot list holding the term standing in for free x.
    if isinstance(s, Var) and s.name == x and x not in bound:
        if found[0] is None:
            found[0] = s2
            return True
        return found[0] == s2
    if isinstance(s, Var):
        return s == s2
    if not isinstance(s2, App) or s.func != s2.func or len(s.args) != len(s2.args):
        return False
    return all(_match_term(a, b, x, bound, found) for a, b in zip(s.args, s2.args))


def _match_instance(b, b2, x, bound, found):
    if type(b) is not type(b2):
        return False
    if isinstance(b, Atom):
        return (b.pred == b2.pred and len(b.args) == len(b2.args)
                and all(_match_term(s, s2, x, bound, found) for s, s2 in zip(b.args, b2.args)))
    if isinstance(b, Not):
        return _match_instance(b.body, b2.body, x, bound, found)
    if isinstance(b, Implies):
        return (_match_instance(b.left, b2.left, x, bound, found)
                and _match_instance(b.right, b2.right, x, bound, found))
    if b.var != b2.var:
        return False
    return _match_instance(b.body, b2.body, x, bound | {b.var}, found)


def instance_term(b: Formula, x: str, b2: Formula):
    """The term t with b[x:=t] == b2 (structurally), or None.

    When x has no free occurrence in b the answer is Var(x) if b == b2.
    """
    found = [None]
    if not _match_instance(b, b2, x, frozenset(), found):
        return None
    return found[0] if found[0] is not None else Var(x)


def _is_a4(f):
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)):
        return False
    x, b = f.left.var, f.left.body
    t = instance_term(b, x, f.right)
    return t is not None and is_free_for(t, x, b)


def _is_a5(f):
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)
            and isinstance(f.left.body, Implies) and isinstance(f.right, Implies)
            and isinstance(f.right.right, ForAll)):
        return False
    x = f.left.var
    b, c = f.left.body.left, f.left.body.right
    return (f.right.left == b and f.right.right.var == x and f.right.right.body == c
            and x not in free_vars(b))


_SCHEMAS = (("A1", _is_a1), ("A2", _is_a2), ("A3", _is_a3), ("A4", _is_a4), ("A5", _is_a5))


@lru_cache(maxsize=1 << 16)
def match_axiom(f: Formula) -> Optional[str]:
    """Name of the first schema (A1..A5) that ``f`` instantiates, else None."""
    for tag, test in _SCHEMAS:
        if test(f):
            return tag
    return None


# -- checking --------------------------------------------------------------

def _hyp_vars(hypotheses):
    out = frozenset()
    for h in hypotheses:
        out |= free_vars(h)
    return out


def check_step(k: int, formula: Formula, just: Justification, formulas: Sequence[Formula],
               hypotheses: Sequence[Formula], hyp_vars: frozenset) -> Optional[str]:
    """Reason step ``k`` (1-based) fails, or None when it is justified."""
    if isinstance(just, Axiom):
        return None if match_axiom(formula) else "not an instance of any axiom schema"
    if isinstance(just, Hyp):
        if not 1 <= just.index <= len(hypotheses):
            return f"no hypothesis {just.index}"
        if hypotheses[just.index - 1] != formula:
            return f"formula differs from hypothesis {just.index}"
        return None
    if isinstance(just, MP):
        i, j = just.minor, just.major
        if not (1 <= i < k and 1 <= j < k):
            return "mp must cite earlier steps"
        if formulas[j - 1] != Implies(formulas[i - 1], formula):
            return f"step {j} is not step {i} -> this formula"
        return None
    if isinstance(just, Gen):
        i = just.premise
        if not 1 <= i < k:
            return "gen must cite an earlier step"
        if formula != ForAll(just.var, formulas[i - 1]):
            return f"formula is not (A {just.var}) applied to step {i}"
        if just.var in hyp_vars:
            return f"generalization on {just.var}, which is free in a hypothesis"
        return None
    return f"unknown justification {just!r}"


def verify_deduction(d: Deduction) -> Verdict:
    if not d.steps:
        return Verdict(False, 0, "empty deduction")
    try:
        for h in d.hypotheses:
            check_formula(h, d.sig)
    except LogicError as e:
        return Verdict(False, 0, f"ill-formed hypothesis: {e}")
    hyp_vars = _hyp_vars(d.hypotheses)
    formulas = d.formulas
    for k, step in enumerate(d.steps, 1):
        try:
            check_formula(step.formula, d.sig)
        except LogicError as e:
            return Verdict(False, k, f"ill-formed formula: {e}")
        reason = check_step(k, step.formula, step.justification, formulas, d.hypotheses, hyp_vars)
        if reason is not None:
            return Verdict(False, k, reason)
    return OK


def find_justification(k: int, formulas: Sequence[Formula], hypotheses: Sequence[Formula],
                       hyp_vars: frozenset) -> Optional[Justification]:
    """First justification for line ``k`` in the fixed order Axiom, Hyp, MP, Gen."""
    f = formulas[k - 1]
    if match_axiom(f):
        return Axiom()
    for i, h in enumerate(hypotheses, 1):
        if h == f:
            return Hyp(i)
    earlier = formulas[:k - 1]
    first_at = {}
    for i, g in enumerate(earlier, 1):
        first_at.setdefault(g, i)
    for j, g in enumerate(earlier, 1):
        if isinstance(g, Implies) and g.right == f:
            i = first_at.get(g.left)
            if i is not None:
                return MP(i, j)
    if isinstance(f, ForAll) and f.var not in hyp_vars:
        i = first_at.get(f.body)
        if i is not None:
            return Gen(i, f.var)
    return None


def infer_justifications(formulas: Sequence[Formula], hypotheses: Sequence[Formula],
                         sig: Signature) -> Deduction:
    """Elaborate a bare formula sequence into a checked deduction."""
    formulas = list(formulas)
    if not formulas:
        raise JustificationError(0, "empty formula sequence")
    for h in hypotheses:
        check_formula(h, sig)
    hyp_vars = _hyp_vars(hypotheses)
    steps = []
    for k, f in enumerate(formulas, 1):
        try:
            check_formula(f, sig)
        except LogicError as e:
            raise JustificationError(k, str(e)) from None
        just = find_justification(k, formulas, hypotheses, hyp_vars)
        if just is None:
            raise JustificationError(k, f"no justification found for {print_formula(f)}")
        steps.append(Step(f, just))
    return Deduction(sig, tuple(hypotheses), tuple(steps))
