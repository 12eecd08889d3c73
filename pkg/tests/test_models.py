import itertools
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dedkit.dedthm import prove_self_implication
from dedkit.errors import OpenFormulaError, UnassignedVariable
from dedkit.kernel import Deduction, Hyp, Step
from dedkit.models import (
    Interpretation, check_entailment, check_soundness, count_interpretations,
    enumerate_interpretations, evaluate,
)
from dedkit.syntax import Implies, Signature, parse_formula, print_formula

from generators import TEST_SIG, rand_closed, rand_closed_deduction, rand_interpretation

SIG = TEST_SIG


def F(text, sig=SIG):
    return parse_formula(text, sig)


def model(k, **tables):
    preds, funcs = [], []
    for name, arity in SIG.predicates:
        preds.append((name, arity, tuple(tables[name])))
    for name, arity in SIG.functions:
        funcs.append((name, arity, tuple(tables[name])))
    return Interpretation(k, tuple(preds), tuple(funcs))


M = model(2, P=[True], Q=[False], R=[True, False], c=[0])


@pytest.mark.parametrize("text, value", [
    ("P", True),
    ("Q", False),
    ("(A x) R(x)", False),
    ("R(c)", True),
    ("~(A x) ~R(x)", True),
    ("(E x) ~R(x)", True),
    ("((P & Q) -> R(c))", True),
    ("(Q -> (A x) R(x))", True),
    ("(P | Q)", True),
])
def test_evaluate(text, value):
    assert evaluate(F(text), M) is value


def test_assignment():
    assert evaluate(F("R(x)"), M, {"x": 0})
    assert not evaluate(F("R(x)"), M, {"x": 1})
    with pytest.raises(UnassignedVariable):
        evaluate(F("R(x)"), M)


@pytest.mark.parametrize("sig, k, n", [("P/0", 1, 2), ("R/1", 2, 4), ("P/0 R/1 c/0", 2, 16),
                                       ("P/0 Q/0 R/1 c/0", 3, 96), ("S/2 f/1", 2, 16 * 4)])
def test_counts(sig, k, n):
    s = Signature.parse(sig)
    ms = list(enumerate_interpretations(s, k))
    assert len(ms) == n == count_interpretations(s, k)
    assert len(set(ms)) == n


def test_canonical_order():
    ms = list(enumerate_interpretations(Signature.parse("P/0 Q/0"), 1))
    assert [(m.holds("P", ()), m.holds("Q", ())) for m in ms] == [
        (False, False), (False, True), (True, False), (True, True)]


def test_entailment_examples():
    assert check_entailment([F("P")], F("P"), SIG, 3) is None
    m = check_entailment([], F("P"), SIG, 3)
    assert m.size == 1 and not m.holds("P", ())
    assert m.describe().splitlines()[:2] == ["domain 1", "table P () = false"]
    assert check_entailment([F("(A x) R(x)")], F("R(c)"), SIG, 3) is None
    with pytest.raises(OpenFormulaError):
        check_entailment([F("R(x)")], F("P"), SIG, 1)


def test_describe():
    text = M.describe()
    assert text == ("domain 2\ntable P () = true\ntable Q () = false\n"
                    "table R (0) = true\ntable R (1) = false\ntable c () = 0\n")


def test_soundness_examples():
    d = prove_self_implication(F("P"), SIG)
    assert all(check_soundness(d, m) for k in (1, 2) for m in enumerate_interpretations(SIG, k))
    dq = Deduction(SIG, (F("Q"),), (Step(F("Q"), Hyp(1)),))
    assert check_soundness(dq, M)          # Q false in M: vacuous


def test_sugar_respected():
    closed = [F(t) for t in ("P", "Q", "R(c)", "(A x) R(x)", "~P")]
    for m in itertools.chain(*(enumerate_interpretations(SIG, k) for k in (1, 2))):
        for a, b in itertools.product(closed, repeat=2):
            pa, pb = print_formula(a), print_formula(b)
            assert evaluate(F(f"({pa} & {pb})"), m) == (evaluate(a, m) and evaluate(b, m))
            assert evaluate(F(f"({pa} | {pb})"), m) == (evaluate(a, m) or evaluate(b, m))


def test_generated_soundness():
    rng = random.Random(17)
    for _ in range(200):
        d = rand_closed_deduction(rng)
        assert check_soundness(d, rand_interpretation(rng))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_deduction_theorem_shadow(seed):
    rng = random.Random(seed)
    t = [rand_closed(rng) for _ in range(rng.randint(0, 2))]
    a, b = rand_closed(rng), rand_closed(rng)
    left = check_entailment(t + [a], b, SIG, 2)
    right = check_entailment(t, Implies(a, b), SIG, 2)
    assert (left is None) == (right is None)
