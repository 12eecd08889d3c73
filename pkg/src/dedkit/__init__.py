"""Hilbert-style first-order proof kernel, deduction-theorem transformations,
Gödel numbering and finite-model checks."""

from .dedthm import concat, discharge, prove_self_implication, undischarge, weaken
from .godel import (
    GodelNumber, SymbolCode, decode_formula, decode_sequence, encode_deduction,
    encode_formula, proof_check, transport_discharge, transport_weaken,
)
from .kernel import (
    MP, Axiom, Deduction, Gen, Hyp, Step, Verdict, infer_justifications, match_axiom,
    verify_deduction,
)
from .models import (
    Interpretation, check_entailment, check_soundness, enumerate_interpretations, evaluate,
)
from .script import format_script, parse_script
from .search import search_deduction
from .syntax import (
    App, Atom, ForAll, Implies, Not, Signature, Var, free_vars, is_free_for, parse_formula,
    print_formula, substitute,
)

__version__ = "0.1.0"
