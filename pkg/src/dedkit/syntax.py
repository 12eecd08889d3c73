"""First-order syntax: signatures, terms, formulas, parsing and substitution.

The core connectives are ``~``, ``->`` and ``(A x)``.  Conjunction,
disjunction and ``(E x)`` are accepted by the parser and expanded on the spot::

    (X & Y)   ==  ~(X -> ~Y)
    (X | Y)   ==  (~X -> Y)
    (E x) F   ==  ~(A x) ~F

so no other module ever sees them.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import CaptureError, ParseError, SignatureError

PREDICATE_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
LOWER_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

# Quantifier keywords; never usable as predicate names.
RESERVED = frozenset({"A", "E"})

# Variables available for coding when the signature declares none of its own.
DEFAULT_VARIABLES = ("x", "y", "z", "u", "v", "w")


@dataclass(frozen=True)
class Signature:
    predicates: tuple[tuple[str, int], ...] = ()
    functions: tuple[tuple[str, int], ...] = ()
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "predicates", tuple((n, int(a)) for n, a in self.predicates))
        object.__setattr__(self, "functions", tuple((n, int(a)) for n, a in self.functions))
        object.__setattr__(self, "variables", tuple(self.variables))
        seen = set()
        for name, arity in self.predicates:
            if not PREDICATE_RE.match(name):
                raise SignatureError(f"bad predicate name {name!r}")
            if name in RESERVED:
                raise SignatureError(f"{name!r} is reserved for quantifiers")
            if arity < 0:
                raise SignatureError(f"negative arity for {name}")
            if name in seen:
                raise SignatureError(f"duplicate symbol {name}")
            seen.add(name)
        for name, arity in self.functions:
            if not LOWER_RE.match(name):
                raise SignatureError(f"bad function name {name!r}")
            if arity < 0:
                raise SignatureError(f"negative arity for {name}")
            if name in seen:
                raise SignatureError(f"duplicate symbol {name}")
            seen.add(name)
        for name in self.variables:
            if not LOWER_RE.match(name):
                raise SignatureError(f"bad variable name {name!r}")
            if name in seen:
                raise SignatureError(f"variable {name} clashes with a declared symbol")
            seen.add(name)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse declarations like ``P/0 R/1 f/1 c/0``; bare names declare variables."""
        preds, funcs, variables = [], [], []
        for tok in text.replace(",", " ").split():
            if "/" in tok:
                name, _, arity = tok.partition("/")
                if not arity.isdigit():
                    raise SignatureError(f"bad arity in {tok!r}")
                (preds if name[:1].isupper() else funcs).append((name, int(arity)))
            else:
                variables.append(tok)
        return cls(tuple(preds), tuple(funcs), tuple(variables))

    def __str__(self):
        parts = [f"{n}/{a}" for n, a in self.predicates + self.functions]
        return " ".join(parts + list(self.variables))

    @cached_property
    def predicate_arity(self) -> dict[str, int]:
        return dict(self.predicates)

    @cached_property
    def function_arity(self) -> dict[str, int]:
        return dict(self.functions)

    @cached_property
    def variable_table(self) -> tuple[str, ...]:
        """Declared variables, then the defaults that don't collide with anything."""
        extra = [v for v in DEFAULT_VARIABLES
                 if v not in self.variables and v not in self.function_arity]
        return self.variables + tuple(extra)

    @property
    def constants(self) -> list[str]:
        return [n for n, a in self.functions if a == 0]


# -- terms -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    func: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.func
        return f"{self.func}({','.join(map(str, self.args))})"


Term = Union[Var, App]


# -- formulas --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple = ()

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "Formula"

    def __str__(self):
        return print_formula(self)


Formula = Union[Atom, Not, Implies, ForAll]


def conj(a: Formula, b: Formula) -> Formula:
    return Not(Implies(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(Not(a), b)


def exists(v: str, body: Formula) -> Formula:
    return Not(ForAll(v, Not(body)))


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({','.join(map(str, f.args))})"
    if isinstance(f, Not):
        return "~" + print_formula(f.body)
    if isinstance(f, Implies):
        return f"({print_formula(f.left)} -> {print_formula(f.right)})"
    if isinstance(f, ForAll):
        return f"(A {f.var}) {print_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(->)|([~(),&|])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, sig):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = min(self.i + k, len(self.tokens) - 1)
        return self.tokens[j][0]

    @property
    def pos(self):
        return self.tokens[self.i][1]

    def take(self, expected=None):
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected {expected!r}, found {found}", pos)
        if tok is None:
            raise ParseError("unexpected end of input", pos)
        self.i += 1
        return tok

    def formula(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.formula())
        if tok == "(":
            if self.peek(1) in RESERVED and _is_lower(self.peek(2)) and self.peek(3) == ")":
                self.take()
                quant = self.take()
                var = self.variable()
                self.take(")")
                body = self.formula()
                return ForAll(var, body) if quant == "A" else exists(var, body)
            self.take()
            left = self.formula()
            op = self.peek()
            if op not in ("->", "&", "|"):
                raise ParseError(f"expected a connective, found {op!r}", self.pos)
            self.take()
            right = self.formula()
            self.take(")")
            if op == "->":
                return Implies(left, right)
            return conj(left, right) if op == "&" else disj(left, right)
        if tok is not None and tok[0].isupper():
            return self.atom()
        if tok is None:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected token {tok!r}", self.pos)

    def atom(self):
        pos = self.pos
        name = self.take()
        arity = self.sig.predicate_arity.get(name)
        if arity is None:
            raise ParseError(f"undeclared predicate {name}", pos)
        args = self.arguments(name, arity, pos)
        return Atom(name, args)

    def arguments(self, name, arity, pos):
        if arity == 0:
            if self.peek() == "(":
                raise ParseError(f"{name} takes no arguments", pos)
            return ()
        self.take("(")
        args = [self.term()]
        while self.peek() == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        if len(args) != arity:
            raise ParseError(f"{name} expects {arity} arguments, got {len(args)}", pos)
        return tuple(args)

    def term(self):
        pos = self.pos
        tok = self.peek()
        if not _is_lower(tok):
            raise ParseError(f"expected a term, found {tok!r}", pos)
        name = self.take()
        arity = self.sig.function_arity.get(name)
        if arity is None:
            if self.peek() == "(":
                raise ParseError(f"undeclared function {name}", pos)
            return Var(name)
        return App(name, self.arguments(name, arity, pos))

    def variable(self):
        pos = self.pos
        name = self.take()
        if not _is_lower(name) or name in self.sig.function_arity:
            raise ParseError(f"{name!r} is not a variable", pos)
        return name


def _is_lower(tok):
    return tok is not None and bool(LOWER_RE.match(tok))


def parse_formula(text: str, sig: Signature) -> Formula:
    p = _Parser(text, sig)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r}", p.pos)
    return f


# -- well-formedness -------------------------------------------------------

def check_term(t: Term, sig: Signature) -> None:
    if isinstance(t, Var):
        if t.name in sig.function_arity:
            raise ParseError(f"{t.name} is a function symbol, not a variable")
        return
    arity = sig.function_arity.get(t.func)
    if arity is None:
        raise ParseError(f"undeclared function {t.func}")
    if arity != len(t.args):
        raise ParseError(f"{t.func} expects {arity} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(a, sig)


def check_formula(f: Formula, sig: Signature) -> None:
    """Raise ParseError unless every symbol of ``f`` is declared with the right arity."""
    if isinstance(f, Atom):
        arity = sig.predicate_arity.get(f.pred)
        if arity is None:
            raise ParseError(f"undeclared predicate {f.pred}")
        if arity != len(f.args):
            raise ParseError(f"{f.pred} expects {arity} arguments, got {len(f.args)}")
        for a in f.args:
            check_term(a, sig)
    elif isinstance(f, Not):
        check_formula(f.body, sig)
    elif isinstance(f, Implies):
        check_formula(f.left, sig)
        check_formula(f.right, sig)
    elif isinstance(f, ForAll):
        if f.var in sig.function_arity:
            raise ParseError(f"cannot quantify over function symbol {f.var}")
        check_formula(f.body, sig)
    else:
        raise TypeError(f"not a formula: {f!r}")


# -- variables and substitution -------------------------------------------

def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Implies):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def is_free_for(t: Term, v: str, f: Formula) -> bool:
    """True iff no free ``v`` in ``f`` sits under a quantifier binding a variable of ``t``."""
    tv = term_vars(t)

    def walk(g, bound):
        if isinstance(g, Atom):
            if bound & tv and any(v in term_vars(a) for a in g.args):
                return False
            return True
        if isinstance(g, Not):
            return walk(g.body, bound)
        if isinstance(g, Implies):
            return walk(g.left, bound) and walk(g.right, bound)
        if g.var == v:
            return True
        return walk(g.body, bound | {g.var})

    return walk(f, frozenset())


def substitute_term(s: Term, v: str, t: Term) -> Term:
    if isinstance(s, Var):
        return t if s.name == v else s
    return App(s.func, tuple(substitute_term(a, v, t) for a in s.args))


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Replace the free occurrences of ``v`` in ``f`` by ``t``.

    Capture is an error; bound variables are never renamed.
    """
    if not is_free_for(t, v, f):
        raise CaptureError(f"{t} is not free for {v} in {print_formula(f)}")
    return _subst(f, v, t)


def _subst(f, v, t):
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(a, v, t) for a in f.args))
    if isinstance(f, Not):
        return Not(_subst(f.body, v, t))
    if isinstance(f, Implies):
        return Implies(_subst(f.left, v, t), _subst(f.right, v, t))
    if f.var == v:
        return f
    return ForAll(f.var, _subst(f.body, v, t))


# -- structure -------------------------------------------------------------

def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f``, ``f`` itself first, preorder."""
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, Implies):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, ForAll):
        yield from subformulas(f.body)


def depth(f: Formula) -> int:
    """Connective nesting depth; atoms have depth 0."""
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Implies):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


def formula_vars(f: Formula) -> frozenset[str]:
    """Every variable occurring in ``f``, free or bound."""
    if isinstance(f, Atom):
        return free_vars(f)
    if isinstance(f, Not):
        return formula_vars(f.body)
    if isinstance(f, Implies):
        return formula_vars(f.left) | formula_vars(f.right)
    return formula_vars(f.body) | {f.var}


def enumerate_terms(sig: Signature, variables: Iterable[str], max_depth: int = 0) -> list[Term]:
    terms = [Var(v) for v in variables] + [App(c) for c in sig.constants]
    for _ in range(max_depth):
        layer = list(terms)
        for name, arity in sig.functions:
            if arity == 0:
                continue
            for args in itertools.product(layer, repeat=arity):
                t = App(name, args)
                if t not in terms:
                    terms.append(t)
    return terms


def enumerate_formulas(sig: Signature, max_depth: int, variables: Iterable[str] = ("x",),
                       term_depth: int = 0) -> list[Formula]:
    """Every formula of depth <= ``max_depth`` over ``sig`` and ``variables``.

    Order is deterministic: atoms first, then each depth layer in turn.
    """
    variables = tuple(variables)
    terms = enumerate_terms(sig, variables, term_depth)
    atoms = []
    for name, arity in sig.predicates:
        for args in itertools.product(terms, repeat=arity):
            atoms.append(Atom(name, args))
    by_depth = [atoms]
    upto = list(atoms)
    for d in range(1, max_depth + 1):
        prev = by_depth[d - 1]
        layer = [Not(f) for f in prev]
        for a in upto:
            for b in prev:
                layer.append(Implies(a, b))
        for a in prev:
            for b in upto:
                if depth(b) < d - 1:
                    layer.append(Implies(a, b))
        layer += [ForAll(v, f) for v in variables for f in prev]
        by_depth.append(layer)
        upto += layer
    return upto
