"""Finite-model semantics.

Domains are {0, ..., k-1}.  Every symbol's table lists its values row by row,
rows in lexicographic order of the argument tuple.  There is no built-in
equality.  ``check_entailment`` scans every model up to a size bound, so a
counterexample refutes entailment while its absence is only evidence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence

from .errors import OpenFormulaError, UnassignedVariable
from .kernel import Deduction
from .syntax import Atom, ForAll, Formula, Implies, Not, Signature, Var, free_vars, print_formula


@dataclass(frozen=True)
class Interpretation:
    size: int
    predicates: tuple = ()   # ((name, arity, (bool, ...)), ...)
    functions: tuple = ()    # ((name, arity, (int, ...)), ...)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("domain must be nonempty")

    @cached_property
    def _tables(self):
        return ({n: v for n, _, v in self.predicates},
                {n: v for n, _, v in self.functions})

    def row_index(self, args: Sequence[int]) -> int:
        i = 0
        for a in args:
            i = i * self.size + a
        return i

    def holds(self, pred: str, args: Sequence[int]) -> bool:
        return self._tables[0][pred][self.row_index(args)]

    def apply(self, func: str, args: Sequence[int]) -> int:
        return self._tables[1][func][self.row_index(args)]

    def describe(self) -> str:
        lines = [f"domain {self.size}"]
        for name, arity, values in self.predicates + self.functions:
            for args, v in zip(itertools.product(range(self.size), repeat=arity), values):
                value = str(v).lower() if isinstance(v, bool) else str(v)
                lines.append(f"table {name} ({','.join(map(str, args))}) = {value}")
        return "\n".join(lines) + "\n"


def eval_term(t, m: Interpretation, s: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return s[t.name]
        except KeyError:
            raise UnassignedVariable(f"variable {t.name} is unassigned") from None
    return m.apply(t.func, [eval_term(a, m, s) for a in t.args])


def evaluate(f: Formula, m: Interpretation, s: Optional[Mapping[str, int]] = None) -> bool:
    """Tarskian satisfaction of ``f`` in ``m`` under assignment ``s``."""
    s = {} if s is None else s
    if isinstance(f, Atom):
        return m.holds(f.pred, [eval_term(a, m, s) for a in f.args])
    if isinstance(f, Not):
        return not evaluate(f.body, m, s)
    if isinstance(f, Implies):
        return (not evaluate(f.left, m, s)) or evaluate(f.right, m, s)
    if isinstance(f, ForAll):
        return all(evaluate(f.body, m, {**s, f.var: d}) for d in range(m.size))
    raise TypeError(f"not a formula: {f!r}")


def enumerate_interpretations(sig: Signature, k: int) -> Iterator[Interpretation]:
    """Every interpretation of ``sig`` on a domain of exactly ``k`` elements.

    Predicates come first, then functions, each in declaration order; the last
    symbol's table varies fastest and False precedes True.
    """
    if k < 1:
        raise ValueError("domain size must be at least 1")
    pred_tables = [list(itertools.product((False, True), repeat=k ** a)) for _, a in sig.predicates]
    func_tables = [list(itertools.product(range(k), repeat=k ** a)) for _, a in sig.functions]
    n = len(sig.predicates)
    for choice in itertools.product(*pred_tables, *func_tables):
        preds = tuple((name, a, v) for (name, a), v in zip(sig.predicates, choice[:n]))
        funcs = tuple((name, a, v) for (name, a), v in zip(sig.functions, choice[n:]))
        yield Interpretation(k, preds, funcs)


def count_interpretations(sig: Signature, k: int) -> int:
    n = 1
    for _, arity in sig.predicates:
        n *= 2 ** (k ** arity)
    for _, arity in sig.functions:
        n *= k ** (k ** arity)
    return n


def _require_closed(formulas, what):
    for f in formulas:
        if free_vars(f):
            raise OpenFormulaError(f"{what} {print_formula(f)} is not closed")


def check_entailment(T: Sequence[Formula], b: Formula, sig: Signature,
                     max_size: int) -> Optional[Interpretation]:
    """First model (sizes 1..max_size, canonical order) of ``T`` falsifying ``b``, or None."""
    _require_closed(T, "hypothesis")
    _require_closed([b], "goal")
    for k in range(1, max_size + 1):
        for m in enumerate_interpretations(sig, k):
            if all(evaluate(t, m) for t in T) and not evaluate(b, m):
                return m
    return None


def check_soundness(d: Deduction, m: Interpretation) -> bool:
    """True iff some hypothesis fails in ``m`` or every step formula holds there."""
    _require_closed(d.hypotheses, "hypothesis")
    _require_closed(d.formulas, "step formula")
    if not all(evaluate(h, m) for h in d.hypotheses):
        return True
    return all(evaluate(f, m) for f in d.formulas)
