"""Exact model counting by monotone sub-formula enumeration.

The counting identity: the number of unsatisfying assignments of a CNF over
n variables equals the signed sum, over all nonempty monotone sub-formulae
(clause subsets in which every variable keeps a single sign), of
(+/-) 2^(n - nu), where nu is the sub-formula's variable count and the sign
is + for an odd and - for an even number of clauses. The model count is
2^n minus that sum.

Enumeration is a depth-first walk over ascending clause indices that extends
a selection only with non-conflicting clauses, so it touches exactly the
monotone subsets and terminates at the maximal ones; no stopping bound is
needed for correctness. Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InternalInconsistencyError
from .formula import Formula

BigCount = int


@dataclass(frozen=True)
class Ledger:
    """Tallies of monotone sub-formulae keyed by variable count.

    entries[nu] = (odd, even): how many monotone sub-formulae have nu
    variables and an odd / even number of clauses. Absent key = both zero.
    """

    n: int
    entries: dict[int, tuple[BigCount, BigCount]]

    def total_subformulae(self) -> BigCount:
        return sum(o + e for o, e in self.entries.values())


@dataclass(frozen=True)
class SignedPartial:
    """Truncated signed sum over monotone sub-formulae of size <= depth."""

    value: int
    depth: int


@dataclass(frozen=True)
class CountStats:
    """Side facts from one enumeration, for --stats style reporting."""

    ledger_entries: int
    total_subformulae: BigCount
    max_subformula_size: int


def _clause_masks(f: Formula) -> tuple[list[int], list[int]]:
    pos_masks, neg_masks = [], []
    for c in f.clauses:
        p = 0
        for v in c.pos:
            p |= 1 << (v - 1)
        q = 0
        for v in c.neg:
            q |= 1 << (v - 1)
        pos_masks.append(p)
        neg_masks.append(q)
    return pos_masks, neg_masks


def _conflict_masks(pos: list[int], neg: list[int]) -> list[int]:
    """conflict[i] has bit j set iff clauses i and j conflict (share a
    variable with opposite signs). Symmetric by construction."""
    m = len(pos)
    conf = [0] * m
    for i in range(m):
        pi, ni = pos[i], neg[i]
        for j in range(i, m):
            if (pi & neg[j]) or (ni & pos[j]):
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return conf


def _walk(
    pos: list[int],
    neg: list[int],
    conf: list[int],
    top_mask: int,
    full_mask: int,
    cap: int,
    visit: Callable[[int, int, int], None],
) -> None:
    """Visit every monotone subset whose lowest clause index is in top_mask.

    `top_mask` selects the first-clause branches this call owns (a worker's
    share); deeper extensions always draw from `full_mask`, the whole
    non-tautological clause set. `visit(size, nu, parity_bit)` is called once
    per subset. Candidate sets are clause-index bit masks; popping the lowest
    set bit keeps extension order ascending, and a child's candidates are the
    remaining higher-index ones minus the new clause's conflict mask.
    """
    if cap < 1:
        return
    sys.setrecursionlimit(max(sys.getrecursionlimit(), len(pos) + 100))

    def rec(cand: int, acc_pos: int, acc_neg: int, size: int) -> None:
        child_size = size + 1
        parity = child_size & 1
        recurse = child_size < cap
        while cand:
            lsb = cand & -cand
            cand ^= lsb
            j = lsb.bit_length() - 1
            npos = acc_pos | pos[j]
            nneg = acc_neg | neg[j]
            visit(child_size, (npos | nneg).bit_count(), parity)
            if recurse:
                child = cand & ~conf[j]
                if child:
                    rec(child, npos, nneg, child_size)

    top = top_mask
    while top:
        lsb = top & -top
        top ^= lsb
        j = lsb.bit_length() - 1
        visit(1, (pos[j] | neg[j]).bit_count(), 1)
        if cap > 1:
            higher = full_mask & ~((lsb << 1) - 1)
            child = higher & ~conf[j]
            if child:
                rec(child, pos[j], neg[j], 1)


def _active_mask(f: Formula, pos: list[int], neg: list[int]) -> int:
    """Non-tautological clauses only: a tautological clause falsifies no
    assignment and conflicts with everything, so it joins no monotone
    sub-formula."""
    mask = 0
    for i in range(f.m):
        if not (pos[i] & neg[i]):
            mask |= 1 << i
    return mask


def enumerate_monotone(f: Formula, visit: Callable[[int, int], None]) -> None:
    """Call visit(size, nu) exactly once per nonempty monotone sub-formula."""
    pos, neg = _clause_masks(f)
    conf = _conflict_masks(pos, neg)
    active = _active_mask(f, pos, neg)
    _walk(pos, neg, conf, active, active, f.m, lambda s, nu, p: visit(s, nu))


def _tally_share(
    pos: list[int],
    neg: list[int],
    conf: list[int],
    n: int,
    top_mask: int,
    full_mask: int,
    cap: int,
) -> tuple[list[int], list[int], int]:
    odd = [0] * (n + 1)
    even = [0] * (n + 1)
    max_size = 0

    def visit(size: int, nu: int, parity: int) -> None:
        nonlocal max_size
        if parity:
            odd[nu] += 1
        else:
            even[nu] += 1
        if size > max_size:
            max_size = size

    _walk(pos, neg, conf, top_mask, full_mask, cap, visit)
    return odd, even, max_size


def _worker_tally(args) -> tuple[list[int], list[int], int]:
    return _tally_share(*args)


def _tally(f: Formula, max_size: Optional[int], workers: int) -> tuple[Ledger, int]:
    pos, neg = _clause_masks(f)
    conf = _conflict_masks(pos, neg)
    active = _active_mask(f, pos, neg)
    cap = max_size if max_size is not None else f.m

    if workers > 1 and f.m >= workers:
        shares = [0] * workers
        for i in range(f.m):
            if (active >> i) & 1:
                shares[i % workers] |= 1 << i
        jobs = [(pos, neg, conf, f.n, s, active, cap) for s in shares if s]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker_tally, jobs))
        odd = [0] * (f.n + 1)
        even = [0] * (f.n + 1)
        max_seen = 0
        for o, e, ms in results:
            max_seen = max(max_seen, ms)
            for nu in range(f.n + 1):
                odd[nu] += o[nu]
                even[nu] += e[nu]
    else:
        odd, even, max_seen = _tally_share(pos, neg, conf, f.n, active, active, cap)

    entries = {
        nu: (odd[nu], even[nu])
        for nu in range(f.n + 1)
        if odd[nu] or even[nu]
    }
    return Ledger(f.n, entries), max_seen


def build_ledger(
    f: Formula,
    max_size: Optional[int] = None,
    workers: int = 1,
) -> Ledger:
    """Tally every monotone sub-formula of size <= max_size (default: all).

    With workers > 1, top-level branches are split round-robin across
    processes and the per-worker tallies merged by addition, so the result
    is independent of scheduling.
    """
    return _tally(f, max_size, workers)[0]


def signed_ledger_sum(ledger: Ledger) -> int:
    """Sum of (odd - even) * 2^(n - nu) over the ledger, in exact signed
    arithmetic. No range check; callers of capped ledgers use this raw."""
    n = ledger.n
    return sum((o - e) * (1 << (n - nu)) for nu, (o, e) in ledger.entries.items())


def unsat_from_ledger(ledger: Ledger) -> BigCount:
    """The exact number of unsatisfying assignments, from an uncapped ledger.

    A result outside [0, 2^n] means the ledger was size-capped or the
    enumeration is buggy; that is an internal error, not a value.
    """
    value = signed_ledger_sum(ledger)
    if not 0 <= value <= (1 << ledger.n):
        raise InternalInconsistencyError(
            f"signed ledger sum {value} outside [0, 2^{ledger.n}]"
            " (size-capped ledger or enumeration bug)"
        )
    return value


def count_models(f: Formula, workers: int = 1) -> BigCount:
    """Exact number of satisfying assignments of `f`."""
    return (1 << f.n) - unsat_from_ledger(build_ledger(f, workers=workers))


def truncated_unsat(f: Formula, r: int) -> SignedPartial:
    """Signed sum truncated at sub-formula size r.

    Alternates around the true unsatisfying-assignment count: odd r gives an
    upper bound, even r a lower bound, with equality once r reaches the
    largest monotone sub-formula size.
    """
    if r < 1:
        raise ValueError(f"truncation depth {r} < 1")
    ledger = build_ledger(f, max_size=r)
    return SignedPartial(signed_ledger_sum(ledger), r)


def _unsat_fused(f: Formula) -> int:
    """Memory-lean mode: accumulate the signed sum during the walk instead
    of building the ledger. Must agree with the ledger path exactly."""
    pos, neg = _clause_masks(f)
    conf = _conflict_masks(pos, neg)
    n = f.n
    total = 0

    def visit(size: int, nu: int, parity: int) -> None:
        nonlocal total
        term = 1 << (n - nu)
        total += term if parity else -term

    active = _active_mask(f, pos, neg)
    _walk(pos, neg, conf, active, active, f.m, visit)
    return total


def count_with_stats(f: Formula, workers: int = 1) -> tuple[BigCount, CountStats, Ledger]:
    """count_models plus enumeration facts (for CLI --stats reporting)."""
    ledger, max_size = _tally(f, None, workers)
    count = (1 << f.n) - unsat_from_ledger(ledger)
    stats = CountStats(
        ledger_entries=len(ledger.entries),
        total_subformulae=ledger.total_subformulae(),
        max_subformula_size=max_size,
    )
    return count, stats, ledger


def write_ledger_csv(ledger: Ledger, path) -> None:
    """Ledger as CSV rows (nu, O, E), ascending nu."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["nu", "O", "E"])
        for nu in sorted(ledger.entries):
            o, e = ledger.entries[nu]
            w.writerow([nu, o, e])
