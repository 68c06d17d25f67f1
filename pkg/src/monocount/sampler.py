"""Simulation of the greedy maximal monotone sub-formula process.

One run streams m = ceil(delta * n) random clauses of length
K = ceil(lam * log2 n) and grows a set of sign-frozen variables: a clause
whose literals all agree with the frozen signs is enrolled (freezing its new
variables), anything else is discarded; the run ends when the stream is
exhausted. The enrolled-clause count is the empirical counterpart of the
recurrence prediction.

The clause stream is SplitMix64-driven and identical, draw for draw, to the
clause sequence of `generate.random_formula` with the same seed. The frozen
signs live in a per-variable byte table rather than packed bit masks, so a
clause costs O(K) work regardless of n; runs at n = 2^22 stay in modest
memory. A `materialize` mode builds the whole formula first and scans it in
a shuffled order instead, for sensitivity checks of the with-replacement
reading (combine with `distinct` to get true without-replacement sampling).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .generate import (
    SplitMix64,
    _draw_clause_masks,
    ceil_tolerant,
    clause_length,
    derive_seed,
    raw_words,
)


@dataclass(frozen=True)
class PsiRun:
    """Outcome of one process run."""

    i_final: int  # clauses enrolled
    consumed: int  # stream clauses examined (the full stream length)
    seed: int
    s_trajectory: Optional[tuple[tuple[int, int], ...]] = None  # (i, frozen count)


@dataclass(frozen=True)
class PsiSummary:
    n: int
    delta: float
    lam: float
    trials: int
    mean: float
    min: int
    max: int
    stddev: float
    master_seed: int


def sample_psi(
    n: int,
    delta: float,
    lam: float,
    seed: int,
    record_trajectory: bool = False,
    materialize: bool = False,
    distinct: bool = False,
) -> PsiRun:
    """One seeded run of the greedy process."""
    K = clause_length(n, lam)
    m = ceil_tolerant(delta * n)
    if materialize:
        return _psi_materialized(n, K, m, seed, record_trajectory, distinct)
    return _psi_stream(n, K, m, seed, record_trajectory)


_STREAM_CHUNK = 1 << 15


def _psi_stream(n: int, K: int, m: int, seed: int, record: bool) -> PsiRun:
    # Consumes the SplitMix64 stream exactly like generate._draw_clause_masks
    # (a test holds the two equal), but draws it in vectorized chunks.
    sign = bytearray(n + 1)  # 0 unset, 1 positive, 2 negative
    frozen = 0
    enrolled = 0
    trajectory: list[tuple[int, int]] = []
    # rejection shifts per Floyd bound, hoisted out of the clause loop
    bounds = [(j, 64 - (j - 1).bit_length()) for j in range(n - K + 1, n + 1)]
    nwords = (K + 63) >> 6

    buf: list[int] = []
    buflen = 0
    ptr = 0
    base = 0  # stream outputs consumed before the current buffer

    for _ in range(m):
        chosen: set[int] = set()
        for j, shift in bounds:
            if j == 1:
                t = 1
            else:
                while True:
                    if ptr == buflen:
                        buf = raw_words(seed, base, _STREAM_CHUNK)
                        base += _STREAM_CHUNK
                        buflen = _STREAM_CHUNK
                        ptr = 0
                    t = buf[ptr] >> shift
                    ptr += 1
                    if t < j:
                        break
                t += 1
            chosen.add(j if t in chosen else t)
        words = []
        for _ in range(nwords):
            if ptr == buflen:
                buf = raw_words(seed, base, _STREAM_CHUNK)
                base += _STREAM_CHUNK
                buflen = _STREAM_CHUNK
                ptr = 0
            words.append(buf[ptr])
            ptr += 1
        variables = sorted(chosen)

        word = words[0]
        ok = True
        wanted: list[int] = []
        for idx, v in enumerate(variables):
            sh = idx & 63
            if idx and sh == 0:
                word = words[idx >> 6]
            want = 1 if (word >> sh) & 1 else 2
            cur = sign[v]
            if cur and cur != want:
                ok = False  # keep drawing: stream alignment over early exit
            wanted.append(want)

        if ok:
            for v, want in zip(variables, wanted):
                if not sign[v]:
                    sign[v] = want
                    frozen += 1
            enrolled += 1
            if record:
                trajectory.append((enrolled, frozen))

    return PsiRun(
        i_final=enrolled,
        consumed=m,
        seed=seed,
        s_trajectory=tuple(trajectory) if record else None,
    )


def _psi_materialized(
    n: int, K: int, m: int, seed: int, record: bool, distinct: bool
) -> PsiRun:
    """Build the clause list first, then greedy-scan it in shuffled order
    (the shuffle continues on the same generator stream)."""
    rng = SplitMix64(seed)
    masks: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    while len(masks) < m:
        pm, nm = _draw_clause_masks(rng, n, K)
        if distinct:
            if (pm, nm) in seen:
                continue
            seen.add((pm, nm))
        masks.append((pm, nm))
    for idx in range(m - 1, 0, -1):  # Fisher-Yates on the same stream
        t = rng.randbelow(idx + 1)
        masks[idx], masks[t] = masks[t], masks[idx]

    crystal_pos = 0
    crystal_neg = 0
    frozen = 0
    enrolled = 0
    trajectory: list[tuple[int, int]] = []
    for pm, nm in masks:
        if (pm & crystal_neg) or (nm & crystal_pos):
            continue
        crystal_pos |= pm
        crystal_neg |= nm
        frozen = (crystal_pos | crystal_neg).bit_count()
        enrolled += 1
        if record:
            trajectory.append((enrolled, frozen))

    return PsiRun(
        i_final=enrolled,
        consumed=m,
        seed=seed,
        s_trajectory=tuple(trajectory) if record else None,
    )


def _trial_job(args) -> tuple[int, int, int]:
    n, delta, lam, seed, materialize, distinct, index = args
    run = sample_psi(n, delta, lam, seed, materialize=materialize, distinct=distinct)
    return index, run.i_final, run.consumed


def sample_trials(
    n: int,
    delta: float,
    lam: float,
    trials: int,
    master_seed: int,
    workers: int = 1,
    materialize: bool = False,
    distinct: bool = False,
) -> list[tuple[int, int, int]]:
    """All trial outcomes as (trial index, i_final, consumed), in index order.

    Trial t runs with seed derive_seed(master_seed, t); outcomes are keyed by
    index, so the result is independent of worker count and scheduling.
    """
    if trials < 1:
        raise ValueError(f"trials = {trials} < 1")
    jobs = [
        (n, delta, lam, derive_seed(master_seed, t), materialize, distinct, t)
        for t in range(trials)
    ]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs))
        results.sort(key=lambda r: r[0])
        return results
    return [_trial_job(j) for j in jobs]


def summarize(
    n: int,
    delta: float,
    lam: float,
    master_seed: int,
    outcomes: list[tuple[int, int, int]],
) -> PsiSummary:
    finals = [i_final for _, i_final, _ in outcomes]
    trials = len(finals)
    mean = sum(finals) / trials
    var = sum((x - mean) ** 2 for x in finals) / trials
    return PsiSummary(
        n=n,
        delta=delta,
        lam=lam,
        trials=trials,
        mean=mean,
        min=min(finals),
        max=max(finals),
        stddev=math.sqrt(var),
        master_seed=master_seed,
    )


def sample_summary(
    n: int,
    delta: float,
    lam: float,
    trials: int,
    master_seed: int,
    workers: int = 1,
    materialize: bool = False,
    distinct: bool = False,
) -> PsiSummary:
    """Aggregate statistics of i_final over seeded trials."""
    outcomes = sample_trials(
        n, delta, lam, trials, master_seed, workers, materialize, distinct
    )
    return summarize(n, delta, lam, master_seed, outcomes)


def write_trials_csv(outcomes: list[tuple[int, int, int]], path) -> None:
    """Per-trial rows `trial,i_final,consumed`."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "i_final", "consumed"])
        for trial, i_final, consumed in outcomes:
            w.writerow([trial, i_final, consumed])


def summary_row(s: PsiSummary) -> list[str]:
    from .predictor import fmt_number

    return [
        str(s.n),
        fmt_number(s.delta),
        fmt_number(s.lam),
        str(s.trials),
        fmt_number(s.mean),
        str(s.min),
        str(s.max),
        fmt_number(s.stddev),
        str(s.master_seed),
    ]


def write_summary_csv(s: PsiSummary, path) -> None:
    """Summary row `n,delta,lambda,trials,mean,min,max,stddev,master_seed`."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["n", "delta", "lambda", "trials", "mean", "min", "max", "stddev", "master_seed"]
        )
        w.writerow(summary_row(s))
