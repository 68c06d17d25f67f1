"""Recurrence-based prediction of the greedy process stopping point.

Models the random process that grows a maximal monotone sub-formula from a
stream of random length-K clauses (K = ceil(lam * log2 n)). Tracked per step
i: `s`, the expected number of sign-frozen variables after i enrollments;
`p`, the probability that the next random clause agrees with all frozen
signs; `w`, the expected number of stream clauses consumed to reach i
enrollments (w grows by 1/p per step). The prediction `i_stop` is the first
i whose expected consumption reaches the stream length ceil(delta * n).

Also provides the closed-form upper bound on i_stop and the base-2 log of
the asymptotic enumeration cost, both as published quantities to compare
the recurrence against. All binomials are evaluated through log-gamma so
non-integer expected counts pose no problem, and sums are normalized by
log-sum-exp for numeric stability at n in the millions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from math import exp, inf, lgamma, log, log1p, log2

from .generate import ceil_tolerant, clause_length

_LN2 = math.log(2.0)
# corrections smaller than this, relative to their term, are dropped
# (they are far below double precision anyway at experiment scales)
_CORRECTION_CUTOFF = 1e-15


def log_binomial(a: int, b: int) -> float:
    """Natural log of C(a, b), exact domain; error for b outside [0, a]."""
    if b < 0 or b > a:
        raise ValueError(f"log_binomial needs 0 <= b <= a, got ({a}, {b})")
    return lgamma(a + 1) - lgamma(b + 1) - lgamma(a - b + 1)


def _log_binomial_real(a: float, b: int) -> float:
    """C(a, b) extended to real a via log-gamma; -inf outside the support
    (the weight-zero rule for impossible overlap counts)."""
    if b < 0 or b > a:
        return -inf
    return lgamma(a + 1) - lgamma(b + 1) - lgamma(a - b + 1)


def _log_sum_exp(values: list[float]) -> float:
    top = max(values)
    if top == -inf:
        return -inf
    return top + log(sum(exp(v - top) for v in values))


@dataclass(frozen=True)
class OverlapDistribution:
    """Distribution of j, the number of literals a fresh compatible clause
    shares with the frozen variables: weight(j) proportional to
    2^(K-j) * C(n - s, K - j) * C(s, j)."""

    K: int
    weights: tuple[float, ...]
    log_total: float  # log of the unnormalized weight sum (= the number of
    #                   compatible clauses when s counts frozen variables)

    def expectation(self) -> float:
        return sum(j * w for j, w in enumerate(self.weights))


def overlap_distribution(n: int, K: int, s_prev: float) -> OverlapDistribution:
    if not 0 <= s_prev <= n:
        raise ValueError(f"s_prev = {s_prev} outside [0, {n}]")
    if K > n:
        raise ValueError(f"K = {K} > n = {n}")
    logw = [
        (K - j) * _LN2
        + _log_binomial_real(n - s_prev, K - j)
        + _log_binomial_real(s_prev, j)
        for j in range(K + 1)
    ]
    total = _log_sum_exp(logw)
    if total == -inf:
        raise ValueError(f"no feasible overlap for n={n}, K={K}, s_prev={s_prev}")
    weights = tuple(exp(v - total) if v > -inf else 0.0 for v in logw)
    return OverlapDistribution(K, weights, total)


def s_next(n: int, K: int, s_prev: float) -> float:
    """Expected frozen-variable count after one more enrollment:
    s_prev + K - E[overlap]."""
    value = s_prev + K - overlap_distribution(n, K, s_prev).expectation()
    return min(float(n), max(s_prev, value))


def _log_universe(n: int, K: int) -> float:
    """log of 2^K * C(n, K), the number of candidate clauses."""
    return K * _LN2 + log_binomial(n, K)


# a consumed-count within this relative distance of the available count is
# below log-gamma resolution: the difference's sign is not decidable in
# doubles, and exhaustion is the conservative reading
_EXHAUSTION_SNAP = 1e-14


def _compat_probability(
    log_compat: float, log_universe: float, i: int, w: float
) -> float:
    """p from the compatible-clause count (log) and the candidate-universe
    size (log), with the small already-consumed adjustments -i and -w applied
    as relative corrections when they matter."""
    rel_num = i * exp(-log_compat)
    if rel_num >= 1.0 - _EXHAUSTION_SNAP:
        return 0.0  # supply of compatible clauses exhausted
    log_num = log_compat + (log1p(-rel_num) if rel_num > _CORRECTION_CUTOFF else 0.0)
    rel_den = w * exp(-log_universe)
    if rel_den >= 1.0 - _EXHAUSTION_SNAP:
        return 0.0  # the whole candidate universe is spent
    log_den = log_universe + (log1p(-rel_den) if rel_den > _CORRECTION_CUTOFF else 0.0)
    return min(1.0, max(0.0, exp(log_num - log_den)))


def p_at(n: int, K: int, s_i: float, i: int, w_i: float) -> float:
    """Probability that a random clause is compatible when s_i variables are
    frozen, i clauses are enrolled, and w_i stream clauses were consumed.

    The i = 0 case is the caller's (it is identically 1)."""
    if i < 1:
        raise ValueError(f"i = {i} < 1 (p is 1 by definition at i = 0)")
    log_universe = _log_universe(n, K)
    if w_i > 0 and log(w_i) >= log_universe:
        raise ValueError(
            f"w_i = {w_i} not below the candidate count 2^{K} * C({n},{K})"
        )
    log_compat = overlap_distribution(n, K, s_i).log_total
    return _compat_probability(log_compat, log_universe, i, w_i)


@dataclass(frozen=True)
class RecurrenceState:
    """One trace row: step i with its s, p, w values."""

    i: int
    s: float
    p: float
    w: float


@dataclass(frozen=True)
class PredictResult:
    n: int
    delta: float
    lam: float
    i_stop: int
    bound: float
    exponent: float
    trace: tuple[RecurrenceState, ...]


def predict_istop(
    n: int, delta: float, lam: float, keep_trace: bool = True
) -> PredictResult:
    """Unroll the recurrence from (s, p, w) = (0, 1, 0) until the expected
    consumption w reaches the stream length m = ceil(delta * n), or the
    compatible supply runs dry (p = 0), or i reaches m (a hard cap: the
    sub-formula cannot hold more clauses than the stream provides)."""
    K = clause_length(n, lam)
    m = ceil_tolerant(delta * n)
    log_universe = _log_universe(n, K)

    s, p, w = 0.0, 1.0, 0.0
    trace = [RecurrenceState(0, s, p, w)] if keep_trace else []
    dist = overlap_distribution(n, K, s)
    i = 0
    i_stop = m
    while i < m:
        i += 1
        w = w + 1.0 / p
        s = min(float(n), s + K - dist.expectation())
        dist = overlap_distribution(n, K, s)
        if w > 0 and (w == inf or log(w) >= log_universe):
            p = 0.0  # consumed the whole candidate universe
        else:
            p = _compat_probability(dist.log_total, log_universe, i, w)
        if keep_trace:
            trace.append(RecurrenceState(i, s, p, w))
        if w >= m or p <= 0.0:
            i_stop = i
            break

    return PredictResult(
        n=n,
        delta=delta,
        lam=lam,
        i_stop=i_stop,
        bound=closed_form_bound(n, delta, lam),
        exponent=runtime_exponent(n, delta, lam),
        trace=tuple(trace),
    )


def closed_form_bound(n: int, delta: float, lam: float) -> float:
    """The published upper bound on the stopping point:
    n/(lam*log2 n) * (1 - 1/sqrt(n^lam)) + delta*n/sqrt(n^lam)."""
    if n < 2:
        raise ValueError(f"n = {n} < 2")
    root = math.sqrt(float(n) ** lam)
    return (n / (lam * log2(n))) * (1.0 - 1.0 / root) + delta * n / root


def runtime_exponent(n: int, delta: float, lam: float) -> float:
    """Base-2 log of the asymptotic enumeration cost:
    n * log2(delta*lam*log2 n) / (lam*log2 n). Sub-linear in n."""
    x = delta * lam * log2(n)
    if x <= 1:
        raise ValueError(f"delta*lam*log2(n) = {x} <= 1")
    return n * log2(x) / (lam * log2(n))


def fmt_number(x: float) -> str:
    """Full-precision float text, with integer-valued floats kept integral."""
    if isinstance(x, int):
        return str(x)
    if x == x and abs(x) < 1e16 and float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def write_trace_csv(result: PredictResult, path) -> None:
    """Trace rows as CSV `i,s,p,w` at full double precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "s", "p", "w"])
        for row in result.trace:
            w.writerow([row.i, fmt_number(row.s), fmt_number(row.p), fmt_number(row.w)])


def result_line(result: PredictResult) -> str:
    """The one-line summary `n,delta,lambda,i_stop,bound,exponent`."""
    return (
        f"{result.n},{fmt_number(result.delta)},{fmt_number(result.lam)},"
        f"{result.i_stop},{result.bound!r},{result.exponent!r}"
    )
