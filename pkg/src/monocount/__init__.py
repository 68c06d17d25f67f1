"""Exact #SAT by monotone sub-formula enumeration.

The model count of a CNF equals 2^n minus a signed sum over its monotone
sub-formulae (clause subsets where every variable keeps one sign), grouped
by variable count and clause-count parity. For random formulas with
logarithmic-length clauses that space is small, so exact counting reduces to
a short enumeration. This package bundles the counter, brute-force oracles,
the stopping-point recurrence predictor, the greedy process sampler, and a
CLI harness that drives desk-scale experiments to CSV.
"""

from .counting import (
    BigCount,
    Ledger,
    SignedPartial,
    build_ledger,
    count_models,
    enumerate_monotone,
    truncated_unsat,
    unsat_from_ledger,
)
from .dimacs import emit_dimacs, parse_dimacs
from .errors import (
    DimacsParseError,
    InternalInconsistencyError,
    LimitExceededError,
    MonocountError,
)
from .formula import Clause, Formula, Provenance, SignedVarSet, VarId, clause, compatible, conflicts, formula
from .generate import GenParams, SplitMix64, clause_length, derive_seed, random_clause, random_formula
from .oracle import OracleLimits, brute_force_ledger, brute_force_models, brute_force_unsat, is_monotone
from .predictor import (
    OverlapDistribution,
    PredictResult,
    RecurrenceState,
    closed_form_bound,
    log_binomial,
    overlap_distribution,
    p_at,
    predict_istop,
    runtime_exponent,
    s_next,
)
from .sampler import PsiRun, PsiSummary, sample_psi, sample_summary

__version__ = "0.1.0"
