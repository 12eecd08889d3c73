"""Deduction-theorem transformations on checked deductions.

``discharge`` turns a deduction of B from (T, A) into one of A -> B from T,
``undischarge`` goes back, and ``concat``/``weaken`` combine and extend
deductions.  None of these is trusted: every result is re-verified by the
kernel before it is returned.
"""
from __future__ import annotations

from .errors import DeductionError
from .kernel import MP, Axiom, Deduction, Gen, Hyp, Step, verify_deduction
from .syntax import ForAll, Formula, Implies, Signature, is_closed, print_formula


def _checked(d: Deduction) -> Deduction:
    verdict = verify_deduction(d)
    if not verdict:
        # Only reachable through a bug in this module.
        raise AssertionError(f"transformation produced an invalid deduction: {verdict}")
    return d


def _require_verified(d: Deduction, what="input deduction"):
    verdict = verify_deduction(d)
    if not verdict:
        raise DeductionError(f"{what} does not verify: {verdict}")


def self_implication_steps(a: Formula, offset: int = 0) -> list[Step]:
    aa = Implies(a, a)
    return [
        Step(Implies(a, Implies(aa, a)), Axiom()),
        Step(Implies(Implies(a, Implies(aa, a)), Implies(Implies(a, aa), aa)), Axiom()),
        Step(Implies(Implies(a, aa), aa), MP(offset + 1, offset + 2)),
        Step(Implies(a, aa), Axiom()),
        Step(aa, MP(offset + 4, offset + 3)),
    ]


def prove_self_implication(a: Formula, sig: Signature) -> Deduction:
    """The five-line deduction of ``a -> a`` from no hypotheses."""
    return _checked(Deduction(sig, (), tuple(self_implication_steps(a))))


def discharge(d: Deduction, a: Formula) -> Deduction:
    """Move the last hypothesis ``a`` of ``d`` into the conclusion as an antecedent."""
    if not is_closed(a):
        raise DeductionError(f"cannot discharge open formula {print_formula(a)}")
    if not d.hypotheses or d.hypotheses[-1] != a:
        raise DeductionError(f"{print_formula(a)} is not the last hypothesis")
    _require_verified(d)
    a_index = len(d.hypotheses)
    out: list[Step] = []
    # where[i] = output line holding a -> B_i for original step i
    where = {}

    def emit(formula, just):
        out.append(Step(formula, just))
        return len(out)

    for i, step in enumerate(d.steps, 1):
        b = step.formula
        just = step.justification
        if isinstance(just, Hyp) and just.index == a_index:
            base = len(out)
            out.extend(self_implication_steps(a, base))
            where[i] = len(out)
        elif isinstance(just, (Axiom, Hyp)):
            n1 = emit(b, just)
            n2 = emit(Implies(b, Implies(a, b)), Axiom())
            where[i] = emit(Implies(a, b), MP(n1, n2))
        elif isinstance(just, MP):
            bj = d.steps[just.minor - 1].formula
            a_bj = Implies(a, bj)
            a_bk = Implies(a, Implies(bj, b))
            a_bi = Implies(a, b)
            n1 = emit(Implies(a_bk, Implies(a_bj, a_bi)), Axiom())
            n2 = emit(Implies(a_bj, a_bi), MP(where[just.major], n1))
            where[i] = emit(a_bi, MP(where[just.minor], n2))
        elif isinstance(just, Gen):
            bj = d.steps[just.premise - 1].formula
            x = just.var
            n1 = emit(ForAll(x, Implies(a, bj)), Gen(where[just.premise], x))
            n2 = emit(Implies(ForAll(x, Implies(a, bj)), Implies(a, ForAll(x, bj))), Axiom())
            where[i] = emit(Implies(a, b), MP(n1, n2))
        else:
            raise DeductionError(f"unknown justification at step {i}")

    return _checked(Deduction(d.sig, d.hypotheses[:-1], tuple(out)))


def undischarge(d: Deduction, a: Formula) -> Deduction:
    """From a deduction of ``a -> B`` obtain one of ``B`` from the hypotheses plus ``a``."""
    _require_verified(d)
    concl = d.conclusion
    if not (isinstance(concl, Implies) and concl.left == a):
        raise DeductionError(
            f"conclusion {print_formula(concl)} is not an implication with antecedent {print_formula(a)}")
    n = len(d.steps)
    steps = d.steps + (Step(a, Hyp(len(d.hypotheses) + 1)), Step(concl.right, MP(n + 1, n)))
    out = Deduction(d.sig, d.hypotheses + (a,), steps)
    verdict = verify_deduction(out)
    if not verdict:
        raise DeductionError(f"adding {print_formula(a)} as a hypothesis breaks the deduction: {verdict}")
    return out


def _shift(just, offset):
    if isinstance(just, MP):
        return MP(just.minor + offset, just.major + offset)
    if isinstance(just, Gen):
        return Gen(just.premise + offset, just.var)
    return just


def concat(d_a: Deduction, d_b: Deduction) -> Deduction:
    """Chain a deduction of A from T with one of B from (T, A) into one of B from T.

    Lines of ``d_b`` that cite the hypothesis A are re-derived with the same
    justification as the last line of ``d_a``, which proved A in the first place.
    """
    t = d_a.hypotheses
    if d_b.hypotheses != t + (d_a.conclusion,):
        raise DeductionError("hypothesis-shape mismatch: second deduction must assume "
                             "the first one's hypotheses followed by its conclusion")
    _require_verified(d_a, "first deduction")
    _require_verified(d_b, "second deduction")
    m = len(d_a.steps)
    a_index = len(t) + 1
    a_just = d_a.steps[-1].justification
    steps = list(d_a.steps)
    for step in d_b.steps:
        just = step.justification
        if isinstance(just, Hyp) and just.index == a_index:
            steps.append(Step(step.formula, a_just))
        else:
            steps.append(Step(step.formula, _shift(just, m)))
    return _checked(Deduction(d_a.sig, t, tuple(steps)))


def weaken(d: Deduction, a: Formula) -> Deduction:
    """Same steps, one more (closed) hypothesis."""
    if not is_closed(a):
        raise DeductionError(f"cannot weaken by open formula {print_formula(a)}")
    _require_verified(d)
    return _checked(Deduction(d.sig, d.hypotheses + (a,), d.steps))


def move_hypothesis_last(d: Deduction, index: int) -> Deduction:
    """Reorder hypotheses so that number ``index`` (1-based) comes last."""
    n = len(d.hypotheses)
    if not 1 <= index <= n:
        raise DeductionError(f"no hypothesis {index}")
    order = [i for i in range(1, n + 1) if i != index] + [index]
    new_index = {old: new for new, old in enumerate(order, 1)}
    hyps = tuple(d.hypotheses[i - 1] for i in order)
    steps = tuple(
        Step(s.formula, Hyp(new_index[s.justification.index]))
        if isinstance(s.justification, Hyp) else s
        for s in d.steps
    )
    return Deduction(d.sig, hyps, steps)
