import math
from collections import Counter

import pytest
from hypothesis import given
import hypothesis.strategies as st

from monocount.dimacs import emit_dimacs
from monocount.generate import (
    GenParams,
    SplitMix64,
    clause_length,
    derive_seed,
    random_clause,
    random_formula,
    raw_words,
)


def test_splitmix64_reference_vector():
    # first output for seed 0 is the published SplitMix64 test value
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_splitmix64_frozen_outputs():
    g = SplitMix64(42)
    assert [g.next_u64() for _ in range(3)] == [
        13679457532755275413,
        2949826092126892291,
        5139283748462763858,
    ]


def test_derive_seed_frozen():
    assert [derive_seed(1234, i) for i in range(4)] == [
        13478418381427711195,
        10936887474700444964,
        3728693401281897946,
        5648149391703318579,
    ]


def test_derive_seed_is_stream_output():
    g = SplitMix64(77)
    outputs = [g.next_u64() for _ in range(10)]
    assert [derive_seed(77, i) for i in range(10)] == outputs


def test_raw_words_matches_scalar_stream():
    g = SplitMix64(99)
    scalar = [g.next_u64() for _ in range(300)]
    assert raw_words(99, 0, 300) == scalar
    assert raw_words(99, 120, 80) == scalar[120:200]


def test_randbelow_range_and_determinism():
    g = SplitMix64(5)
    values = [g.randbelow(10) for _ in range(1000)]
    assert all(0 <= v < 10 for v in values)
    assert set(values) == set(range(10))
    g2 = SplitMix64(5)
    assert values == [g2.randbelow(10) for _ in range(1000)]


def test_randbelow_edges():
    g = SplitMix64(0)
    assert g.randbelow(1) == 0
    with pytest.raises(ValueError):
        g.randbelow(0)
    big = 1 << 100
    values = [g.randbelow(big) for _ in range(50)]
    assert all(0 <= v < big for v in values)
    assert any(v > (1 << 64) for v in values)


def test_clause_length_values():
    assert clause_length(256, 1) == 8
    assert clause_length(68, 1.2) == 8
    assert clause_length(2, 1) == 1
    # float product 1.1 * 20 lands at 22.000000000000004; tolerant ceiling
    assert clause_length(2**20, 1.1) == 22


def test_clause_length_too_long():
    with pytest.raises(ValueError):
        clause_length(2, 3)


def test_random_clause_unit_variable():
    for seed in range(8):
        c = random_clause(1, 1, SplitMix64(seed))
        assert c.pos == {1} or c.neg == {1}
        assert c.width == 1


def test_random_clause_full_width():
    c = random_clause(5, 5, SplitMix64(3))
    assert c.variables == frozenset({1, 2, 3, 4, 5})


def test_random_clause_bad_width():
    with pytest.raises(ValueError):
        random_clause(5, 6, SplitMix64(0))
    with pytest.raises(ValueError):
        random_clause(5, 0, SplitMix64(0))


@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=2**64 - 1))
def test_random_clause_width_and_no_tautology(n, seed):
    rng = SplitMix64(seed)
    k = 1 + rng.randbelow(n)
    c = random_clause(n, k, rng)
    assert c.width == k
    assert not c.tautological
    assert all(1 <= v <= n for v in c.variables)


def test_random_clause_uniform_chi_square():
    # 200k draws at n=4, k=2: all 24 candidate clauses within 3 sigma of 1/24
    draws = 200_000
    rng = SplitMix64(20260808)
    counts = Counter()
    for _ in range(draws):
        c = random_clause(4, 2, rng)
        counts[(tuple(sorted(c.pos)), tuple(sorted(c.neg)))] += 1
    assert len(counts) == 24
    p = 1 / 24
    sigma = math.sqrt(p * (1 - p) / draws)
    for key, count in counts.items():
        assert abs(count / draws - p) <= 3 * sigma, (key, count / draws)


def test_random_formula_shape_and_determinism():
    params = GenParams(n=8, delta=1, lam=1, seed=11)
    f = random_formula(params)
    assert f.m == 8
    assert all(c.width == 3 for c in f.clauses)
    assert emit_dimacs(f) == emit_dimacs(random_formula(params))


def test_random_formula_desk_instance_family():
    f = random_formula(GenParams(n=68, delta=1, lam=1.2, seed=1))
    assert f.m == 68
    assert all(c.width == 8 for c in f.clauses)


def test_random_formula_parameter_arithmetic():
    params = GenParams(n=2**10, delta=2, lam=1, seed=0)
    f = random_formula(params)
    assert f.m == 2 * 2**10
    assert all(c.width == 10 for c in f.clauses)


def test_sign_balance():
    # positive-occurrence frequency converges to 1/2
    rng = SplitMix64(7)
    pos = total = 0
    for _ in range(4000):
        c = random_clause(64, 6, rng)
        pos += len(c.pos)
        total += 6
    assert abs(pos / total - 0.5) < 0.02


def test_gen_params_validation():
    with pytest.raises(ValueError):
        GenParams(n=8, delta=0.5, lam=1, seed=0)
    with pytest.raises(ValueError):
        GenParams(n=8, delta=1, lam=0.9, seed=0)
    with pytest.raises(ValueError):
        GenParams(n=8, delta=1, lam=1, seed=0, k_up=2)  # below k_low = 3
    with pytest.raises(ValueError):
        GenParams(n=8, delta=1, lam=1, seed=0, k_up=9)  # above n


def test_distinct_mode():
    f = random_formula(GenParams(n=3, delta=2, lam=1, seed=4, distinct=True))
    keys = [(tuple(sorted(c.pos)), tuple(sorted(c.neg))) for c in f.clauses]
    assert len(set(keys)) == len(keys) == 6
    with pytest.raises(ValueError):
        # only 2^1 * C(2,1) = 4 distinct unit clauses exist over n = 2
        random_formula(GenParams(n=2, delta=3, lam=1, seed=0, distinct=True))


def test_mixed_length_mode():
    params = GenParams(n=4, delta=500, lam=1, seed=9, k_up=4)
    f = random_formula(params)
    widths = Counter(c.width for c in f.clauses)
    assert set(widths) <= {2, 3, 4}
    # candidate counts 2^k C(4,k): 24, 32, 16 -> probabilities 1/3, 4/9, 2/9
    total = f.m
    for k, expected in [(2, 1 / 3), (3, 4 / 9), (4, 2 / 9)]:
        sigma = math.sqrt(expected * (1 - expected) / total)
        assert abs(widths[k] / total - expected) <= 4 * sigma


def test_provenance_recorded():
    params = GenParams(n=16, delta=1.5, lam=1, seed=21)
    f = random_formula(params)
    assert f.provenance is not None
    assert f.provenance.seed == 21
    assert f.provenance.delta == 1.5
    assert f.provenance.k_low == 4
    assert f.provenance.k_high == 4
