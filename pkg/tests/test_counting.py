import pytest
from hypothesis import given, settings

from monocount.counting import (
    Ledger,
    _unsat_fused,
    build_ledger,
    count_models,
    count_with_stats,
    enumerate_monotone,
    signed_ledger_sum,
    truncated_unsat,
    unsat_from_ledger,
    write_ledger_csv,
)
from monocount.dimacs import parse_dimacs
from monocount.errors import InternalInconsistencyError
from monocount.formula import Formula, formula
from monocount.oracle import brute_force_ledger, brute_force_models

from conftest import formulas_st


def visits_of(f):
    out = []
    enumerate_monotone(f, lambda size, nu: out.append((size, nu)))
    return sorted(out)


def test_enumerate_conflicting_pair():
    f = formula(1, (1,), (-1,))
    assert visits_of(f) == [(1, 1), (1, 1)]


def test_enumerate_compatible_pair():
    f = formula(3, (1, 2), (2, 3))
    assert visits_of(f) == [(1, 2), (1, 2), (2, 3)]


def test_enumerate_skips_tautological():
    f = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0")
    assert visits_of(f) == [(1, 1)]


@given(formulas_st(max_n=7, max_m=7, allow_tautological=True))
def test_enumerate_count_matches_oracle(f):
    assert len(visits_of(f)) == brute_force_ledger(f).total_subformulae()


def test_ledger_empty_formula():
    assert build_ledger(Formula(3, ())).entries == {}


def test_ledger_conflicting_pair():
    f = formula(1, (1,), (-1,))
    assert build_ledger(f).entries == {1: (2, 0)}


def test_ledger_compatible_pair():
    f = formula(3, (1, 2), (2, 3))
    assert build_ledger(f).entries == {2: (2, 0), 3: (0, 1)}


def test_ledger_max_size_cap():
    f = formula(4, (1, 2), (2, 3), (3, 4))
    capped = build_ledger(f, max_size=1)
    assert capped.entries == {2: (3, 0)}
    full = build_ledger(f)
    assert full.total_subformulae() == 7  # all subsets: the formula is monotone


def test_unsat_examples():
    assert unsat_from_ledger(build_ledger(formula(1, (1,), (-1,)))) == 2
    assert unsat_from_ledger(build_ledger(formula(3, (1, 2), (2, 3)))) == 3
    assert unsat_from_ledger(Ledger(3, {})) == 0


def test_unsat_rejects_out_of_range_sum():
    with pytest.raises(InternalInconsistencyError):
        unsat_from_ledger(Ledger(1, {1: (5, 0)}))  # 5 > 2^1
    with pytest.raises(InternalInconsistencyError):
        unsat_from_ledger(Ledger(2, {1: (0, 1)}))  # negative


def test_count_examples():
    assert count_models(Formula(3, ())) == 8
    assert count_models(formula(1, (1,))) == 1
    assert count_models(formula(2, (1, 2), (-1, 2))) == 2
    assert count_models(formula(3, (1, 2), (2, 3))) == 5


def test_count_tautological_only():
    f = parse_dimacs("p cnf 2 1\n1 -1 0")
    assert count_models(f) == 4


def test_truncated_example():
    f = formula(3, (1, 2), (2, 3))
    assert truncated_unsat(f, 1).value == 4
    assert truncated_unsat(f, 2).value == 3
    assert truncated_unsat(f, 5).value == 3  # r >= m: the exact value
    with pytest.raises(ValueError):
        truncated_unsat(f, 0)


@given(formulas_st(max_n=7, max_m=7, allow_tautological=True))
@settings(max_examples=60)
def test_bonferroni_sandwich(f):
    unsat = (1 << f.n) - brute_force_models(f)
    for r in range(1, f.m + 1):
        value = truncated_unsat(f, r).value
        if r % 2:
            assert value >= unsat
        else:
            assert value <= unsat
    if f.m:
        assert truncated_unsat(f, f.m).value == unsat


@given(formulas_st(max_n=8, max_m=8, allow_tautological=True))
def test_count_matches_brute_force(f):
    count = count_models(f)
    assert count == brute_force_models(f)
    assert 0 <= count <= 1 << f.n


@given(formulas_st(max_n=7, max_m=7, allow_tautological=True))
def test_ledger_matches_brute_force(f):
    assert build_ledger(f) == brute_force_ledger(f)


@given(formulas_st(max_n=7, max_m=7, allow_tautological=True))
@settings(max_examples=50)
def test_fused_mode_agrees_with_ledger(f):
    assert _unsat_fused(f) == signed_ledger_sum(build_ledger(f))


def test_worker_count_does_not_change_result():
    from monocount.generate import GenParams, random_formula

    f = random_formula(GenParams(n=30, delta=1, lam=1, seed=13))
    assert count_models(f, workers=1) == count_models(f, workers=3)
    assert build_ledger(f, workers=1) == build_ledger(f, workers=4)


def test_count_with_stats_reports_sizes():
    f = formula(3, (1, 2), (2, 3))
    count, stats, ledger = count_with_stats(f)
    assert count == 5
    assert stats.total_subformulae == 3
    assert stats.max_subformula_size == 2
    assert stats.ledger_entries == len(ledger.entries) == 2


def test_ledger_csv(tmp_path):
    f = formula(3, (1, 2), (2, 3))
    path = tmp_path / "ledger.csv"
    write_ledger_csv(build_ledger(f), path)
    assert path.read_text() == "nu,O,E\n2,2,0\n3,0,1\n"
