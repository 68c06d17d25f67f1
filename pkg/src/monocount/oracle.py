"""Desk-scale ground truth, independent of the enumeration counter.

Two brute forces: an assignment-space scan (all 2^n assignments tested
against every clause) and a subset-space scan (all 2^m - 1 nonempty clause
subsets classified by a union-of-signs monotonicity test). Transparency over
speed; both refuse inputs beyond configurable limits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .counting import BigCount, Ledger
from .errors import LimitExceededError
from .formula import Clause, Formula

_CHUNK_BITS = 20  # assignment scan block size: 2^20 rows per numpy chunk


@dataclass(frozen=True)
class OracleLimits:
    max_n_assignments: int = 26
    max_m_subsets: int = 22


DEFAULT_LIMITS = OracleLimits()


def _scan_chunks(f: Formula):
    """Yield (chunk, sat, falsified) boolean arrays per assignment block.

    Bit v-1 of an assignment integer is variable v's value. An assignment a
    satisfies a clause iff (a & pos_mask) != 0 or (~a & neg_mask) != 0.
    """
    n = f.n
    pos = np.array([sum(1 << (v - 1) for v in c.pos) for c in f.clauses], dtype=np.int64)
    neg = np.array([sum(1 << (v - 1) for v in c.neg) for c in f.clauses], dtype=np.int64)
    total = 1 << n
    step = min(total, 1 << _CHUNK_BITS)
    for lo in range(0, total, step):
        a = np.arange(lo, min(lo + step, total), dtype=np.int64)
        sat_all = np.ones(a.shape, dtype=bool)
        fal_any = np.zeros(a.shape, dtype=bool)
        for p, q in zip(pos, neg):
            clause_sat = ((a & p) != 0) | ((~a & q) != 0)
            sat_all &= clause_sat
            fal_any |= ~clause_sat
        yield a, sat_all, fal_any


def brute_force_models(f: Formula, limits: OracleLimits = DEFAULT_LIMITS) -> BigCount:
    """Count satisfying assignments by direct enumeration of all 2^n."""
    if f.n > limits.max_n_assignments:
        raise LimitExceededError(
            f"n = {f.n} exceeds assignment-scan limit {limits.max_n_assignments}"
        )
    return int(sum(int(sat.sum()) for _, sat, _ in _scan_chunks(f)))


def brute_force_unsat(f: Formula, limits: OracleLimits = DEFAULT_LIMITS) -> BigCount:
    """Count assignments falsifying at least one clause (the complementary
    scan; together with brute_force_models it must tile 2^n)."""
    if f.n > limits.max_n_assignments:
        raise LimitExceededError(
            f"n = {f.n} exceeds assignment-scan limit {limits.max_n_assignments}"
        )
    return int(sum(int(fal.sum()) for _, _, fal in _scan_chunks(f)))


def brute_force_ledger(f: Formula, limits: OracleLimits = DEFAULT_LIMITS) -> Ledger:
    """Classify every nonempty clause subset by brute force.

    A subset is monotone iff the union of its positive variables is disjoint
    from the union of its negated ones (this also rejects any subset holding
    a tautological clause). Memory is O(2^m) machine words.
    """
    m = f.m
    if m > limits.max_m_subsets:
        raise LimitExceededError(
            f"m = {m} exceeds subset-scan limit {limits.max_m_subsets}"
        )
    pos = [sum(1 << (v - 1) for v in c.pos) for c in f.clauses]
    neg = [sum(1 << (v - 1) for v in c.neg) for c in f.clauses]
    odd = [0] * (f.n + 1)
    even = [0] * (f.n + 1)
    pos_union = [0] * (1 << m)
    neg_union = [0] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        j = low.bit_length() - 1
        rest = s ^ low
        p = pos_union[rest] | pos[j]
        q = neg_union[rest] | neg[j]
        pos_union[s] = p
        neg_union[s] = q
        if p & q:
            continue
        nu = (p | q).bit_count()
        if s.bit_count() & 1:
            odd[nu] += 1
        else:
            even[nu] += 1
    entries = {
        nu: (odd[nu], even[nu]) for nu in range(f.n + 1) if odd[nu] or even[nu]
    }
    return Ledger(f.n, entries)


def is_monotone(subformula: list[Clause]) -> bool:
    """True iff no variable occurs with both signs across the clauses
    (vacuously true for the empty list)."""
    pos: frozenset[int] = frozenset()
    neg: frozenset[int] = frozenset()
    for c in subformula:
        pos |= c.pos
        neg |= c.neg
    return pos.isdisjoint(neg)
