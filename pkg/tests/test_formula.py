import pytest
from hypothesis import given
import hypothesis.strategies as st

from monocount.formula import (
    Clause,
    SignedVarSet,
    clause,
    compatible,
    conflicts,
    formula,
)

from conftest import clauses_st, formulas_st


def test_clause_basics():
    c = clause(1, -2, 3)
    assert c.pos == {1, 3}
    assert c.neg == {2}
    assert c.width == 3
    assert not c.tautological
    assert c.literals() == [1, 3, -2]


def test_empty_clause_rejected():
    with pytest.raises(ValueError):
        Clause(frozenset(), frozenset())


def test_zero_literal_rejected():
    with pytest.raises(ValueError):
        clause(1, 0)


def test_tautological_flagged():
    t = clause(1, -1)
    assert t.tautological
    assert t.width == 1


def test_formula_rejects_out_of_range_variable():
    with pytest.raises(ValueError):
        formula(2, (1, 3))


def test_formula_allows_duplicates_and_unused_variables():
    f = formula(5, (1, -2), (1, -2))
    assert f.m == 2
    assert f.clauses[0] == f.clauses[1]


def test_conflicts_examples():
    assert conflicts(clause(1, 2), clause(3, -1)) is True
    assert conflicts(clause(1, 2), clause(2, 3)) is False
    c = clause(1, -2)
    assert conflicts(c, c) is False
    t = clause(1, -1)
    assert conflicts(t, t) is True


def test_compatible_examples():
    empty = SignedVarSet()
    assert compatible(empty, clause(1, 2)) is True
    assert compatible(SignedVarSet(pos=frozenset({2})), clause(1, -2)) is False
    assert compatible(
        SignedVarSet(pos=frozenset({1}), neg=frozenset({3})), clause(1, 4)
    ) is True
    assert compatible(empty, clause(1, -1)) is False  # tautological


def test_signed_var_set_invariant():
    with pytest.raises(ValueError):
        SignedVarSet(pos=frozenset({1}), neg=frozenset({1}))


def test_merge_incompatible_raises():
    crystal = SignedVarSet(pos=frozenset({1}))
    with pytest.raises(ValueError):
        crystal.merge(clause(-1, 2))


@given(clauses_st(6), clauses_st(6))
def test_conflicts_symmetric(a, b):
    assert conflicts(a, b) == conflicts(b, a)


@given(formulas_st(max_n=6, max_m=5))
def test_compatible_equals_pairwise_nonconflict_replay(f):
    """Merging clause by clause: a candidate is compatible with the crystal
    exactly when it conflicts with none of the merged clauses."""
    crystal = SignedVarSet()
    merged = []
    for c in f.clauses:
        if c.tautological:
            continue
        pairwise_ok = all(not conflicts(d, c) for d in merged)
        assert compatible(crystal, c) == pairwise_ok
        if pairwise_ok:
            crystal = crystal.merge(c)
            merged.append(c)


@given(formulas_st(max_n=6, max_m=6))
def test_merge_preserves_disjointness_and_grows(f):
    crystal = SignedVarSet()
    for c in f.clauses:
        if compatible(crystal, c):
            bigger = crystal.merge(c)
            assert bigger.pos.isdisjoint(bigger.neg)
            assert bigger.size >= crystal.size
            crystal = bigger
