"""Gödel numbering of formulas and deductions, and the proof relation.

A finite sequence <a1, ..., ak> of positive naturals is coded as
2^a1 * 3^a2 * ... * pk^ak.  A formula is the sequence of its preorder symbol
codes; a deduction is the sequence of its step formulas' codes.  Symbol codes
for a signature::

    ~ 1    -> 2    A 3
    i-th variable   4 + 3i
    i-th function   5 + 3i
    i-th predicate  6 + 3i

Deduction codes have formula codes as exponents, so they are astronomically
large as soon as a step is more than an atom.  ``GodelNumber`` therefore keeps
the exponent vector, which determines the number exactly, and only multiplies
it out on request.
"""
from __future__ import annotations

import math
from functools import lru_cache, total_ordering
from typing import Sequence, Union

import gmpy2
from mpmath import mp

from .errors import (
    DeductionError, InvalidWitness, LogicError, NotACode, UnknownSymbol,
)
from .dedthm import discharge
from .kernel import MP, Axiom, Deduction, Step, infer_justifications, verify_deduction
from .syntax import (
    App, Atom, ForAll, Formula, Implies, Not, Signature, Var, is_closed, print_formula,
)

NOT, IMPLIES, FORALL = 1, 2, 3

# Largest number (in bits) that int() will multiply out.
MATERIALIZE_MAX_BITS = 1 << 24
# Numbers above this many bits print as a prime-power product instead of decimal.
DECIMAL_MAX_BITS = 13_000


_PRIMES = [2]


def _primes(k):
    """The first ``k`` primes."""
    while len(_PRIMES) < k:
        _PRIMES.append(int(gmpy2.next_prime(_PRIMES[-1])))
    return _PRIMES[:k]


def nth_prime(i: int) -> int:
    """The i-th prime, 0-based (nth_prime(0) == 2)."""
    if i >= len(_PRIMES):
        _primes(i + 1)
    return _PRIMES[i]


@total_ordering
class GodelNumber:
    """A natural number whose prime support is an initial segment of the primes.

    Stored as its exponent vector; ``GodelNumber(())`` is 1, the empty sequence.
    """
    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[int]):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 1 for e in exponents):
            raise NotACode("sequence entries must be positive")
        object.__setattr__(self, "exponents", exponents)

    def __setattr__(self, name, value):
        raise AttributeError("GodelNumber is immutable")

    @classmethod
    def _trusted(cls, exponents: tuple) -> "GodelNumber":
        g = object.__new__(cls)
        object.__setattr__(g, "exponents", exponents)
        return g

    @classmethod
    def from_int(cls, n: int) -> "GodelNumber":
        n = int(n)
        if n < 1:
            raise NotACode(f"{n} is not a positive natural")
        exps = []
        m = gmpy2.mpz(n)
        i = 0
        remove = gmpy2.remove
        while m > 1:
            if i >= len(_PRIMES):
                _primes(i + 1)
            p = _PRIMES[i]
            m, e = remove(m, p)
            if e == 0:
                raise NotACode(f"not a sequence code: skips the prime {p}")
            exps.append(int(e))
            i += 1
        return cls._trusted(tuple(exps))

    @classmethod
    def parse(cls, text: str) -> "GodelNumber":
        """Decimal, or a product of prime powers such as ``2^64*3^5``."""
        text = "".join(text.split())
        if text.isdigit():
            return cls.from_int(int(text))
        by_prime = {}
        try:
            for factor in text.split("*"):
                base, _, exp = factor.partition("^")
                p, e = int(base), int(exp) if exp else 1
                if not gmpy2.is_prime(p):
                    raise NotACode(f"{p} is not prime")
                by_prime[p] = by_prime.get(p, 0) + e
        except ValueError:
            raise NotACode(f"cannot read {text!r} as a number") from None
        primes = _primes(len(by_prime))
        if sorted(by_prime) != primes:
            raise NotACode(f"{text} does not use an initial segment of the primes")
        return cls([by_prime[p] for p in primes])

    def bits(self) -> float:
        """log2 of the value, approximately; inf when that overflows a float."""
        try:
            return sum(e * math.log2(p) for e, p in zip(self.exponents, _primes(len(self.exponents))))
        except OverflowError:
            return math.inf

    def __int__(self):
        exps = self.exponents
        if exps and max(exps) * len(exps) * nth_prime(len(exps) - 1).bit_length() > MATERIALIZE_MAX_BITS \
                and self.bits() > MATERIALIZE_MAX_BITS:
            raise OverflowError(f"refusing to multiply out a ~{self.bits():.3g}-bit number")
        value = 1
        for e, p in zip(exps, _primes(len(exps))):
            value *= p ** e
        return value

    @property
    def value(self) -> int:
        return int(self)

    def factored(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"{p}^{e}" for p, e in zip(_primes(len(self.exponents)), self.exponents))

    def __str__(self):
        if self.bits() <= DECIMAL_MAX_BITS:
            return str(int(self))
        return self.factored()

    def __repr__(self):
        return f"GodelNumber({self.factored()})"

    def __len__(self):
        return len(self.exponents)

    def __eq__(self, other):
        if isinstance(other, GodelNumber):
            return self.exponents == other.exponents
        return NotImplemented

    def __hash__(self):
        return hash(self.exponents)

    def __lt__(self, other):
        if not isinstance(other, GodelNumber):
            return NotImplemented
        if self.exponents == other.exponents:
            return False
        if max(self.bits(), other.bits()) < 1 << 16:
            return int(self) < int(other)
        return _log_less(self.exponents, other.exponents)


def _log_less(a, b):
    # Distinct exponent vectors give distinct numbers, so raising the working
    # precision always separates the two logarithms eventually.
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    common = [min(x, y) for x, y in zip(a, b)]
    a = [x - c for x, c in zip(a, common)]
    b = [y - c for y, c in zip(b, common)]
    primes = _primes(n)
    prec = 64
    while True:
        with mp.workprec(prec):
            la = mp.fsum(mp.mpf(x) * mp.log(p) for p, x in zip(primes, a))
            lb = mp.fsum(mp.mpf(y) * mp.log(p) for p, y in zip(primes, b))
            # generous bound on accumulated rounding error
            slack = (abs(la) + abs(lb) + 1) * mp.ldexp(1, 16 - prec) * n
            if lb - la > slack:
                return True
            if la - lb > slack:
                return False
        prec *= 2


GodelLike = Union[int, GodelNumber]


def as_godel(n: GodelLike) -> GodelNumber:
    return n if isinstance(n, GodelNumber) else GodelNumber.from_int(n)


# -- symbol codes ----------------------------------------------------------

class SymbolCode:
    """The symbol-to-natural table of one signature."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.var_code = {v: 4 + 3 * i for i, v in enumerate(sig.variable_table)}
        self.func_code = {f: 5 + 3 * i for i, (f, _) in enumerate(sig.functions)}
        self.pred_code = {p: 6 + 3 * i for i, (p, _) in enumerate(sig.predicates)}
        self.by_code = {NOT: ("not", None, 1), IMPLIES: ("implies", None, 2), FORALL: ("forall", None, 2)}
        for v, c in self.var_code.items():
            self.by_code[c] = ("var", v, 0)
        for f, a in sig.functions:
            self.by_code[self.func_code[f]] = ("func", f, a)
        for p, a in sig.predicates:
            self.by_code[self.pred_code[p]] = ("pred", p, a)

    def dump(self) -> str:
        names = {NOT: "~", IMPLIES: "->", FORALL: "A"}
        lines = []
        for c in sorted(self.by_code):
            kind, name, _ = self.by_code[c]
            lines.append(f"code {names.get(c, name)} {c}")
        return "\n".join(lines) + "\n"

    # preorder token streams

    def term_tokens(self, t, out):
        if isinstance(t, Var):
            if t.name not in self.var_code:
                raise UnknownSymbol(f"variable {t.name} has no code in this signature")
            out.append(self.var_code[t.name])
            return
        if t.func not in self.func_code:
            raise UnknownSymbol(f"function {t.func} is not declared")
        out.append(self.func_code[t.func])
        for a in t.args:
            self.term_tokens(a, out)

    def tokens(self, f: Formula, out=None) -> list[int]:
        if out is None:
            out = []
        if isinstance(f, Atom):
            if f.pred not in self.pred_code:
                raise UnknownSymbol(f"predicate {f.pred} is not declared")
            out.append(self.pred_code[f.pred])
            for a in f.args:
                self.term_tokens(a, out)
        elif isinstance(f, Not):
            out.append(NOT)
            self.tokens(f.body, out)
        elif isinstance(f, Implies):
            out.append(IMPLIES)
            self.tokens(f.left, out)
            self.tokens(f.right, out)
        elif isinstance(f, ForAll):
            if f.var not in self.var_code:
                raise UnknownSymbol(f"variable {f.var} has no code in this signature")
            out += (FORALL, self.var_code[f.var])
            self.tokens(f.body, out)
        else:
            raise TypeError(f"not a formula: {f!r}")
        return out

    def read_formula(self, tokens: Sequence[int]) -> Formula:
        it = iter(tokens)
        by_code = self.by_code

        def entry(kinds):
            c = next(it, None)
            if c is None:
                raise NotACode("truncated symbol stream")
            info = by_code.get(c)
            if info is None:
                raise NotACode(f"unknown symbol code {c}")
            if info[0] not in kinds:
                raise NotACode(f"symbol code {c} ({info[0]}) where a {'/'.join(sorted(kinds))} belongs")
            return info

        def term():
            kind, name, arity = entry(_TERM_KINDS)
            if kind == "var":
                return Var(name)
            return App(name, tuple([term() for _ in range(arity)]))

        def formula():
            kind, name, arity = entry(_FORMULA_KINDS)
            if kind == "pred":
                return Atom(name, tuple([term() for _ in range(arity)]) if arity else ())
            if kind == "not":
                return Not(formula())
            if kind == "implies":
                left = formula()
                return Implies(left, formula())
            _, var, _ = entry(_VAR_KIND)
            return ForAll(var, formula())

        f = formula()
        if next(it, None) is not None:
            raise NotACode("symbol stream continues past the end of the formula")
        return f


_TERM_KINDS = frozenset(("var", "func"))
_FORMULA_KINDS = frozenset(("not", "implies", "forall", "pred"))
_VAR_KIND = frozenset(("var",))


@lru_cache(maxsize=64)
def symbol_code(sig: Signature) -> SymbolCode:
    return SymbolCode(sig)


def _codes(x) -> SymbolCode:
    return x if isinstance(x, SymbolCode) else symbol_code(x)


# -- encode / decode -------------------------------------------------------

def encode_formula(f: Formula, codes) -> GodelNumber:
    return GodelNumber(_codes(codes).tokens(f))


def decode_formula(n: GodelLike, sig) -> Formula:
    return _codes(sig).read_formula(as_godel(n).exponents)


def encode_sequence(formulas: Sequence[Formula], codes) -> GodelNumber:
    codes = _codes(codes)
    return GodelNumber(int(encode_formula(f, codes)) for f in formulas)


def encode_deduction(d: Deduction, codes=None) -> GodelNumber:
    """Code of the step-formula sequence; justifications are not coded."""
    return encode_sequence(d.formulas, codes if codes is not None else d.sig)


def decode_sequence(n: GodelLike, sig) -> list[Formula]:
    codes = _codes(sig)
    seq = as_godel(n).exponents
    if not seq:
        raise NotACode("1 codes the empty sequence")
    return [codes.read_formula(GodelNumber.from_int(e).exponents) for e in seq]


# -- the proof relation ------------------------------------------------------

def elaborate(x: GodelLike, T: Sequence[Formula], sig: Signature) -> Deduction:
    """Decode ``x`` and rebuild justifications; raises on any failure."""
    return infer_justifications(decode_sequence(x, sig), T, sig)


def proof_check(x: GodelLike, y: GodelLike, T: Sequence[Formula], sig: Signature) -> bool:
    """True iff ``x`` codes a deduction from ``T`` of the formula coded by ``y``."""
    try:
        d = elaborate(x, T, sig)
        return encode_formula(d.conclusion, sig) == as_godel(y)
    except LogicError:
        return False


def _witness(x, T, sig):
    try:
        return elaborate(x, T, sig)
    except LogicError as e:
        raise InvalidWitness(f"not a deduction from the given hypotheses: {e}") from None


def transport_discharge(x: GodelLike, a: Formula, T: Sequence[Formula], sig: Signature) -> GodelNumber:
    """Witness for (T, a) |- B  ->  witness for T |- a -> B."""
    if not is_closed(a):
        raise DeductionError(f"{print_formula(a)} is not closed")
    d = _witness(x, tuple(T) + (a,), sig)
    return encode_deduction(discharge(d, a))


def transport_weaken(u: GodelLike, a: Formula, T: Sequence[Formula], sig: Signature) -> GodelNumber:
    """Witness for T |- B  ->  witness for T |- a -> B."""
    if not is_closed(a):
        raise DeductionError(f"{print_formula(a)} is not closed")
    d = _witness(u, tuple(T), sig)
    b = d.conclusion
    n = len(d.steps)
    steps = d.steps + (Step(Implies(b, Implies(a, b)), Axiom()), Step(Implies(a, b), MP(n, n + 1)))
    out = Deduction(d.sig, d.hypotheses, steps)
    assert verify_deduction(out), "weakened witness failed to verify"
    return encode_deduction(out)
