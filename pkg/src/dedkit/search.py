"""Bounded proof search.

Searches for a deduction of a goal from hypotheses T with at most ``max_len``
lines.  The search runs backwards from the goal: a pending formula is closed
by a hypothesis or axiom line, by Gen on its body, or by MP from an antecedent
X and the implication X -> goal, both of which become pending.  Lines are
shared, so a formula already on the line set costs nothing.

The only unbounded choice is the MP antecedent X.  Candidates are

* the antecedents forced by an axiom schema whose consequent is the pending
  formula (for A4, abstractions of terms of the pending formula),
* antecedents of implications in T or already among the lines,
* formulas already among the lines,
* the *pool*: every formula of connective depth <= ``pool_depth`` over the
  signature's predicates and constants and the variables occurring in the goal
  and T, plus all subformulas of T and the goal.

Lengths are tried in increasing order, candidates in increasing Gödel code, so
the result is reproducible and of minimal length within the candidate space.
The found line set is emitted in its lexicographically least valid order (by
formula code), goal last.  ``None`` means the bounds were exhausted; it is not
a proof that the goal is underivable.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Optional, Sequence

from .errors import LogicError
from .godel import GodelNumber, encode_deduction, encode_formula, symbol_code
from .kernel import (
    Deduction, find_justification, infer_justifications, match_axiom, verify_deduction,
)
from .syntax import (
    App, Atom, ForAll, Formula, Implies, Not, Signature, Var,
    enumerate_formulas, formula_vars, free_vars, subformulas,
)

# Upper bound on A4 abstractions tried per (term, variable) pair.
MAX_ABSTRACTIONS = 64


def formula_pool(goal: Formula, T: Sequence[Formula], sig: Signature, pool_depth: int) -> tuple[set, list[str]]:
    variables = set(formula_vars(goal))
    for h in T:
        variables |= formula_vars(h)
    table = sig.variable_table
    variables = sorted(variables, key=lambda v: (table.index(v) if v in table else len(table), v))
    pool = set(enumerate_formulas(sig, pool_depth, variables))
    for f in (goal, *T):
        pool.update(subformulas(f))
    return pool, variables


def _term_abstractions(s, t, x):
    if s == t:
        return [s, Var(x)]
    if isinstance(s, App) and s.args:
        return [App(s.func, args) for args in itertools.product(
            *(_term_abstractions(a, t, x) for a in s.args))]
    return [s]


def _abstractions(f, t, x):
    """Formulas obtained from ``f`` by replacing any set of occurrences of ``t`` by ``x``."""
    if isinstance(f, Atom):
        for args in itertools.product(*(_term_abstractions(a, t, x) for a in f.args)):
            yield Atom(f.pred, args)
    elif isinstance(f, Not):
        for b in _abstractions(f.body, t, x):
            yield Not(b)
    elif isinstance(f, Implies):
        for left in _abstractions(f.left, t, x):
            for right in _abstractions(f.right, t, x):
                yield Implies(left, right)
    else:
        for b in _abstractions(f.body, t, x):
            yield ForAll(f.var, b)


def _subterms(f):
    out = set()

    def walk_term(t):
        out.add(t)
        if isinstance(t, App):
            for a in t.args:
                walk_term(a)

    for g in subformulas(f):
        if isinstance(g, Atom):
            for a in g.args:
                walk_term(a)
    return out


def forced_antecedents(g: Formula, variables: Sequence[str]) -> set[Formula]:
    """Every X for which X -> g is an axiom instance of a shape we can invert."""
    out = set()
    if isinstance(g, Implies):
        out.add(g.right)                                    # A1
        l, r = g.left, g.right
        if isinstance(l, Implies) and isinstance(r, Implies) and l.left == r.left:
            out.add(Implies(l.left, Implies(l.right, r.right)))     # A2
        if isinstance(l, Implies) and isinstance(l.left, Not) and l.left.body == r:
            out.add(Implies(l.left, Not(l.right)))           # A3
        if isinstance(r, ForAll) and r.var not in free_vars(l):
            out.add(ForAll(r.var, Implies(l, r.body)))        # A5
    for x in set(variables) | free_vars(g):
        out.add(ForAll(x, g))                                # A4, t = x
        for t in _subterms(g):
            if t == Var(x):
                continue
            for b in itertools.islice(_abstractions(g, t, x), MAX_ABSTRACTIONS):
                if b != g:
                    out.add(ForAll(x, b))
    return {x for x in out if x != g and match_axiom(Implies(x, g))}


class _Searcher:
    def __init__(self, goal, T, sig, pool_depth):
        self.goal = goal
        self.T = tuple(T)
        self.T_set = set(T)
        self.sig = sig
        self.codes = symbol_code(sig)
        self.hyp_vars = frozenset().union(*(free_vars(h) for h in T)) if T else frozenset()
        pool, self.variables = formula_pool(goal, T, sig, pool_depth)
        self.pool = sorted(pool, key=self.key)
        # X with (X -> C) in T, indexed by C
        self.hyp_antecedents = {}
        for h in T:
            if isinstance(h, Implies):
                self.hyp_antecedents.setdefault(h.right, set()).add(h.left)

    def key(self, f):
        return _code_key(self.codes, f)

    def is_leaf(self, g):
        return g in self.T_set or match_axiom(g) is not None

    @lru_cache(maxsize=None)
    def forced(self, g):
        return frozenset(forced_antecedents(g, self.variables))

    def antecedents(self, g, lines, rest, with_pool):
        known = lines | set(rest)
        special = set(self.forced(g)) | self.hyp_antecedents.get(g, set())
        for f in known:
            special.add(f)
            if isinstance(f, Implies):
                if f.right == g:
                    special.add(f.left)
                r = f.right
                # Y and Y -> (X -> g) known: X -> g costs a single line
                if isinstance(r, Implies) and r.right == g and f.left in known:
                    special.add(r.left)
        special.discard(g)
        special = sorted(special, key=self.key)
        if not with_pool:
            yield from special
            return
        pool_set = self._pool_set
        special = [f for f in special if f not in pool_set]
        # merge with the presorted pool
        i = j = 0
        pool = self.pool
        while i < len(pool) or j < len(special):
            if j >= len(special) or (i < len(pool) and self.key(pool[i]) <= self.key(special[j])):
                f = pool[i]
                i += 1
                if f == g:
                    continue
            else:
                f = special[j]
                j += 1
            yield f

    def run(self, max_len):
        self._pool_set = set(self.pool)
        for budget in range(1, max_len + 1):
            self.budget = budget
            for lines in self.prove((self.goal,), frozenset()):
                d = self.linearize(lines)
                if d is not None:
                    return d
        return None

    def prove(self, pending, lines):
        if not pending:
            yield lines
            return
        g, rest = pending[0], pending[1:]
        if g in lines:
            yield from self.prove(rest, lines)
            return
        need = len({p for p in pending if p not in lines})
        if len(lines) + need > self.budget:
            return
        new = lines | {g}
        if self.is_leaf(g):
            yield from self.prove(rest, new)
            return
        if isinstance(g, ForAll) and g.var not in self.hyp_vars:
            yield from self.prove((g.body,) + rest, new)
        # Lines left over once a fresh antecedent and implication are paid for.
        # With none left, both must be leaves or one step from known lines,
        # which only the special candidates can achieve.
        slack = self.budget - len(new) - len({p for p in rest if p not in new}) - 2
        for x in self.antecedents(g, new, rest, slack > 0):
            yield from self.prove((x, Implies(x, g)) + rest, new)

    def linearize(self, lines) -> Optional[Deduction]:
        remaining = sorted((f for f in lines if f != self.goal), key=self.key)
        placed = []
        while remaining:
            for idx, f in enumerate(remaining):
                if find_justification(len(placed) + 1, placed + [f], self.T, self.hyp_vars):
                    placed.append(f)
                    del remaining[idx]
                    break
            else:
                return None
        placed.append(self.goal)
        try:
            d = infer_justifications(placed, self.T, self.sig)
        except LogicError:
            return None
        return d if verify_deduction(d) else None


@lru_cache(maxsize=1 << 16)
def _code_key(codes, f):
    return int(encode_formula(f, codes))


def search_deduction(goal: Formula, T: Sequence[Formula], sig: Signature,
                     max_len: int, pool_depth: int) -> Optional[tuple[Deduction, GodelNumber]]:
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    codes = symbol_code(sig)
    for f in (goal, *T):
        encode_formula(f, codes)    # fail early on symbols the coding can't express
    d = _Searcher(goal, T, sig, pool_depth).run(max_len)
    if d is None:
        return None
    return d, encode_deduction(d)
