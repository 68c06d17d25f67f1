"""Seeded generation of random sparse formulas with logarithmic clause length.

An instance family is parameterized by (n, delta, lam): ceil(delta * n)
clauses, each drawn independently and uniformly among the 2^k * C(n, k)
clauses of length k = ceil(lam * log2 n) (k distinct variables, independent
fair signs, never tautological). An optional upper length bound widens the
draw to all lengths in [k, k_up], weighted by candidate counts, so clauses
stay uniform over the full candidate set.

Reproducibility contract (frozen; tests pin it):
  * The generator is SplitMix64: state advances by the 64-bit golden-gamma
    0x9E3779B97F4A7C15 and each output is the standard 30/27/31 xor-multiply
    scramble of the state.
  * randbelow(b) takes the top ceil(log2 b) bits of successive outputs and
    rejects values >= b (multi-word for b > 2^64).
  * A clause draws its k variables by Floyd's subset sampling (loop
    j = n-k+1 .. n, one randbelow(j) each), then one 64-bit word per 64
    variables for signs; bit i of the sign block gives the sign of the
    i-th smallest chosen variable (set bit = positive).
  * Trial t of a multi-trial run is seeded with derive_seed(master, t),
    the (t+1)-th SplitMix64 output of a stream started at `master`.

Equal parameters and seed therefore yield bit-identical formulas on every
platform and regardless of worker scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .formula import Clause, Formula, Provenance

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# ceil with 1e-9 slack: float products like 1.1 * 20 land a hair above the
# exact integer and must not round up a whole step
_CEIL_TOL = 1e-9


def ceil_tolerant(x: float) -> int:
    return math.ceil(x - _CEIL_TOL)


class SplitMix64:
    """The package-wide deterministic 64-bit generator."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), any positive bound (big ints ok)."""
        if bound <= 0:
            raise ValueError(f"bound {bound} <= 0")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        words = (bits + 63) // 64
        shift = words * 64 - bits
        while True:
            v = 0
            for _ in range(words):
                v = (v << 64) | self.next_u64()
            v >>= shift
            if v < bound:
                return v


def raw_words(seed: int, start: int, count: int) -> list[int]:
    """Outputs start+1 .. start+count of the SplitMix64 stream, batched.

    The generator is counter-based (output i is a pure function of
    seed + i * gamma), so any stretch of the stream can be evaluated in one
    vectorized pass; this is bit-identical to calling next_u64 repeatedly
    and exists purely as a bulk fast path.
    """
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    x = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
    z = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return (z ^ (z >> np.uint64(31))).tolist()


def derive_seed(master_seed: int, index: int) -> int:
    """Child seed for trial `index` (the (index+1)-th output of the master
    stream); documented so individual trials are reproducible in isolation."""
    x = (master_seed + (index + 1) * _GAMMA) & _MASK64
    z = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class GenParams:
    """Parameters of the random instance family."""

    n: int
    delta: float
    lam: float
    seed: int
    k_up: Optional[int] = None  # upper clause length; None = uniform length
    distinct: bool = False  # reject duplicate clauses (sensitivity checks)

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError(f"delta {self.delta} < 1")
        if self.lam < 1:
            raise ValueError(f"lam {self.lam} < 1")
        k = clause_length(self.n, self.lam)
        if self.k_up is not None and not k <= self.k_up <= self.n:
            raise ValueError(f"need {k} <= k_up <= {self.n}, got {self.k_up}")

    @property
    def m(self) -> int:
        return ceil_tolerant(self.delta * self.n)

    @property
    def k_low(self) -> int:
        return clause_length(self.n, self.lam)

    @property
    def k_high(self) -> int:
        return self.k_up if self.k_up is not None else self.k_low


def clause_length(n: int, lam: float) -> int:
    """ceil(lam * log2 n), the uniform clause length; must not exceed n."""
    if n < 2:
        raise ValueError(f"n = {n} < 2")
    k = ceil_tolerant(lam * math.log2(n))
    if k > n:
        raise ValueError(f"clause length ceil({lam} * log2 {n}) = {k} > n")
    return k


def _draw_clause_masks(rng: SplitMix64, n: int, k: int) -> tuple[int, int]:
    """One uniform clause as (pos_mask, neg_mask) bit masks (bit v-1 = var v).

    This is the single source of clause randomness: Formula generation and
    the streaming process sampler both consume it, so they see the same
    clause sequence for the same seed.
    """
    chosen: set[int] = set()
    for j in range(n - k + 1, n + 1):
        t = rng.randbelow(j) + 1
        chosen.add(j if t in chosen else t)
    variables = sorted(chosen)
    pos = 0
    neg = 0
    sign_word = 0
    for i, v in enumerate(variables):
        if i % 64 == 0:
            sign_word = rng.next_u64()
        if (sign_word >> (i % 64)) & 1:
            pos |= 1 << (v - 1)
        else:
            neg |= 1 << (v - 1)
    return pos, neg


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length())  # bit v-1 encodes variable v
        mask ^= lsb
    return frozenset(out)


def random_clause(n: int, k: int, rng: SplitMix64) -> Clause:
    """Uniform draw among the 2^k * C(n, k) clauses of length k over [1, n]."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got {k}")
    pos, neg = _draw_clause_masks(rng, n, k)
    return Clause(_mask_to_set(pos), _mask_to_set(neg))


def _length_weights(n: int, k_low: int, k_high: int) -> list[int]:
    """Candidate counts 2^k * C(n, k) per length, for mixed-length draws."""
    return [(1 << k) * math.comb(n, k) for k in range(k_low, k_high + 1)]


def random_formula(params: GenParams) -> Formula:
    """The seeded instance: ceil(delta * n) i.i.d. clauses.

    With `distinct`, duplicate clauses are rejected and redrawn (the default
    samples with replacement; duplicates are vanishingly rare at scale).
    """
    n = params.n
    rng = SplitMix64(params.seed)
    k_low, k_high = params.k_low, params.k_high
    weights = _length_weights(n, k_low, k_high) if k_high > k_low else None
    total_weight = sum(weights) if weights else 0
    if params.distinct and params.m > sum(_length_weights(n, k_low, k_high)):
        raise ValueError("more distinct clauses requested than candidates exist")

    clauses: list[Clause] = []
    seen: set[tuple[int, int]] = set()
    while len(clauses) < params.m:
        if weights is None:
            k = k_low
        else:
            r = rng.randbelow(total_weight)
            k = k_low
            for w in weights:
                if r < w:
                    break
                r -= w
                k += 1
        pos, neg = _draw_clause_masks(rng, n, k)
        if params.distinct:
            if (pos, neg) in seen:
                continue
            seen.add((pos, neg))
        clauses.append(Clause(_mask_to_set(pos), _mask_to_set(neg)))

    prov = Provenance(params.seed, params.delta, params.lam, k_low, k_high)
    return Formula(n, tuple(clauses), prov)
