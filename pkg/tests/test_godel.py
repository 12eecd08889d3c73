import itertools
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dedkit.dedthm import prove_self_implication
from dedkit.errors import DeductionError, InvalidWitness, NotACode, UnknownSymbol
from dedkit.godel import (
    GodelNumber, decode_formula, decode_sequence, encode_deduction, encode_formula,
    encode_sequence, nth_prime, proof_check, symbol_code, transport_discharge, transport_weaken,
)
from dedkit.kernel import Deduction, Hyp, Step, verify_deduction
from dedkit.syntax import Implies, Signature, enumerate_formulas, parse_formula

from generators import TEST_SIG, GenParams, rand_deduction

SIG = TEST_SIG


def F(text, sig=SIG):
    return parse_formula(text, sig)


def factorize(n):
    """Plain trial division, used as an independent oracle."""
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_primes():
    assert [nth_prime(i) for i in range(10)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_symbol_table():
    codes = symbol_code(Signature.parse("P/0 Q/0 R/1 c/0"))
    assert codes.pred_code == {"P": 6, "Q": 9, "R": 12}
    assert codes.func_code == {"c": 5}
    assert codes.var_code["x"] == 4 and codes.var_code["y"] == 7
    dump = codes.dump().splitlines()
    assert dump[:6] == ["code ~ 1", "code -> 2", "code A 3", "code x 4", "code c 5", "code P 6"]


def test_hand_values():
    assert int(encode_formula(F("P"), SIG)) == 64
    sig = Signature.parse("R/1 x0")
    n = encode_formula(F("~R(x0)", sig), sig)
    assert int(n) == 2 ** 1 * 3 ** 6 * 5 ** 4 == 911250
    assert decode_formula(911250, sig) == F("~R(x0)", sig)
    assert decode_formula(64, SIG) == F("P")
    d = Deduction(SIG, (F("P"),), (Step(F("P"), Hyp(1)),))
    assert int(encode_deduction(d)) == 2 ** 64 == 18446744073709551616


def test_two_step_value():
    f = F("(P -> (Q -> P))")
    code = int(encode_formula(f, SIG))
    # tokens 2 6 2 9 6
    assert code == 2 ** 2 * 3 ** 6 * 5 ** 2 * 7 ** 9 * 11 ** 6
    g = encode_sequence([F("P"), f], SIG)
    assert g.exponents == (64, code)
    assert decode_sequence(g, SIG) == [F("P"), f]


@pytest.mark.parametrize("n", [0, 1, 7, 2 * 5, 2 ** 3 * 3 ** 999])
def test_not_a_formula_code(n):
    with pytest.raises(NotACode):
        decode_formula(n, SIG)


def test_stream_errors():
    with pytest.raises(NotACode, match="truncated"):
        decode_formula(GodelNumber([2, 6]), SIG)
    with pytest.raises(NotACode, match="continues"):
        decode_formula(GodelNumber([6, 6]), SIG)
    with pytest.raises(NotACode):
        decode_formula(GodelNumber([12, 6]), SIG)      # predicate where a term belongs
    with pytest.raises(UnknownSymbol):
        encode_formula(F("P"), Signature.parse("Q/0"))


def test_from_int_matches_trial_division():
    rng = random.Random(5)
    for _ in range(300):
        exps = [rng.randint(1, 40) for _ in range(rng.randint(1, 8))]
        n = 1
        for i, e in enumerate(exps):
            n *= nth_prime(i) ** e
        g = GodelNumber.from_int(n)
        assert list(g.exponents) == exps
        assert factorize(n) == {nth_prime(i): e for i, e in enumerate(exps)}
        assert int(g) == n


def test_parse_and_print():
    assert GodelNumber.parse("64") == GodelNumber([6])
    assert GodelNumber.parse("2^64") == GodelNumber([64])
    assert GodelNumber.parse("2^3 * 3^5") == GodelNumber([3, 5])
    with pytest.raises(NotACode):
        GodelNumber.parse("3^5")
    with pytest.raises(NotACode):
        GodelNumber.parse("4^5")
    big = GodelNumber([10 ** 6, 3])
    assert str(big) == "2^1000000*3^3"
    assert GodelNumber.parse(str(big)) == big
    assert str(GodelNumber([64])) == "18446744073709551616"
    with pytest.raises(OverflowError):
        int(GodelNumber([10 ** 9]))


def test_ordering():
    assert GodelNumber([4]) < GodelNumber([1, 1, 1]) < GodelNumber([6])
    a, b = GodelNumber([10 ** 7, 5]), GodelNumber([10 ** 7, 6])
    assert a < b and not b < a
    # 2^(3k) < 3^(2k): 8^k < 9^k
    assert GodelNumber([3 * 10 ** 6]) < GodelNumber([1, 2 * 10 ** 6])


def test_prefix_codes_increase():
    rng = random.Random(6)
    for _ in range(50):
        d = rand_deduction(rng, GenParams(max_len=8))
        codes = [encode_sequence(d.formulas[:k], SIG) for k in range(1, len(d) + 1)]
        assert all(a < b for a, b in zip(codes, codes[1:]))


def test_round_trip_depth2_through_integers():
    codes = symbol_code(SIG)
    fs = enumerate_formulas(SIG, 2)
    nums = set()
    for f in fs:
        n = int(encode_formula(f, codes))
        assert decode_formula(n, codes) == f
        nums.add(n)
    assert len(nums) == len(fs)


def test_short_sequences_exhaustive():
    atoms = enumerate_formulas(SIG, 0)
    for k in range(1, 4):
        for seq in itertools.product(atoms, repeat=k):
            n = int(encode_sequence(seq, SIG))
            assert decode_sequence(n, SIG) == list(seq)


def test_proof_check_examples():
    x = 2 ** 64
    assert proof_check(x, 64, [F("P")], SIG)
    assert not proof_check(x, 64, [], SIG)
    assert not proof_check(7, 64, [F("P")], SIG)
    assert not proof_check(x, 65, [F("P")], SIG)
    assert not proof_check(1, 64, [F("P")], SIG)
    assert not proof_check(x, 7, [F("P")], SIG)


def test_transport_discharge_examples():
    z = transport_discharge(2 ** 64, F("P"), [], SIG)
    assert decode_sequence(z, SIG) == prove_self_implication(F("P"), SIG).formulas
    assert proof_check(z, encode_formula(F("(P -> P)"), SIG), [], SIG)
    x = encode_deduction(Deduction(SIG, (F("Q"), F("P")), (Step(F("Q"), Hyp(1)),)))
    z = transport_discharge(x, F("P"), [F("Q")], SIG)
    assert len(decode_sequence(z, SIG)) == 3
    assert proof_check(z, encode_formula(F("(P -> Q)"), SIG), [F("Q")], SIG)
    with pytest.raises(InvalidWitness):
        transport_discharge(7, F("P"), [], SIG)
    with pytest.raises(DeductionError):
        transport_discharge(2 ** 64, F("R(x)"), [], SIG)


def test_transport_weaken_examples():
    z = transport_weaken(2 ** 64, F("Q"), [F("P")], SIG)
    assert len(decode_sequence(z, SIG)) == 3
    assert proof_check(z, encode_formula(F("(Q -> P)"), SIG), [F("P")], SIG)
    u = encode_deduction(prove_self_implication(F("P"), SIG))
    z = transport_weaken(u, F("P"), [], SIG)
    assert proof_check(z, encode_formula(F("(P -> (P -> P))"), SIG), [], SIG)
    with pytest.raises(InvalidWitness):
        transport_weaken(2 ** 64, F("Q"), [], SIG)


def test_generated_witness_relations():
    rng = random.Random(21)
    for _ in range(60):
        d = rand_deduction(rng, GenParams(max_len=10))
        assert verify_deduction(d)
        t, a = d.hypotheses[:-1], d.hypotheses[-1]
        x = encode_deduction(d)
        assert proof_check(x, encode_formula(d.conclusion, SIG), d.hypotheses, SIG)
        z = transport_discharge(x, a, t, SIG)
        assert proof_check(z, encode_formula(Implies(a, d.conclusion), SIG), t, SIG)
        w = transport_weaken(x, a, d.hypotheses, SIG)
        assert proof_check(w, encode_formula(Implies(a, d.conclusion), SIG), d.hypotheses, SIG)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 60), min_size=1, max_size=6))
def test_exponent_vectors_round_trip(exps):
    g = GodelNumber(exps)
    assert GodelNumber.from_int(int(g)) == g
    assert GodelNumber.parse(str(g)) == g
    assert GodelNumber.parse(g.factored()) == g
