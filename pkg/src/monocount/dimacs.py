"""DIMACS CNF reader and writer.

Accepted input: optional `c ...` comment lines, one `p cnf <n> <m>` header,
then m clauses as whitespace-separated nonzero integers each terminated by 0
(clauses may span lines; several may share a line). Duplicate literals within
a clause are deduplicated; a clause containing both v and -v is kept and
flagged tautological; an empty clause (a bare terminator) is a parse error.
"""

from __future__ import annotations

from typing import IO, Union

from .errors import DimacsParseError
from .formula import Clause, Formula


def parse_dimacs(text: Union[str, IO[str]]) -> Formula:
    """Parse DIMACS CNF text (a string or a text stream) into a Formula."""
    if hasattr(text, "read"):
        text = text.read()

    n = None
    m_declared = None
    header_line = 0
    clauses: list[Clause] = []
    pending_pos: set[int] = set()
    pending_neg: set[int] = set()
    pending = False
    clause_start_line = 0

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if n is not None:
                raise DimacsParseError("duplicate 'p' header", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header {stripped!r}", lineno)
            try:
                n = int(parts[2])
                m_declared = int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed header {stripped!r}", lineno)
            if n < 0 or m_declared < 0:
                raise DimacsParseError(f"malformed header {stripped!r}", lineno)
            header_line = lineno
            continue
        if n is None:
            raise DimacsParseError("clause data before 'p cnf' header", lineno)
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsParseError(f"bad token {token!r}", lineno)
            if lit == 0:
                if not pending:
                    raise DimacsParseError("empty clause (zero literals)", lineno)
                clauses.append(Clause(frozenset(pending_pos), frozenset(pending_neg)))
                pending_pos, pending_neg = set(), set()
                pending = False
                continue
            v = abs(lit)
            if v > n:
                raise DimacsParseError(
                    f"literal {lit} out of range (n = {n})", lineno
                )
            if not pending:
                clause_start_line = lineno
                pending = True
            (pending_pos if lit > 0 else pending_neg).add(v)

    if n is None:
        raise DimacsParseError("missing 'p cnf' header", 1)
    if pending:
        raise DimacsParseError("unterminated clause (missing 0)", clause_start_line)
    if len(clauses) != m_declared:
        raise DimacsParseError(
            f"clause count mismatch: header declares {m_declared}, found {len(clauses)}",
            header_line,
        )
    return Formula(n, tuple(clauses))


def emit_dimacs(f: Formula) -> str:
    """Serialize a Formula to DIMACS text.

    Round-trips through parse_dimacs up to within-clause literal order.
    Generation provenance, when present, is recorded in comment lines.
    """
    lines = []
    if f.provenance is not None:
        p = f.provenance
        lines.append(
            f"c generated n={f.n} delta={p.delta} lambda={p.lam}"
            f" seed={p.seed} k_low={p.k_low} k_high={p.k_high}"
        )
    lines.append(f"p cnf {f.n} {f.m}")
    for c in f.clauses:
        lines.append(" ".join(str(lit) for lit in c.literals()) + " 0")
    return "\n".join(lines) + "\n"


def read_dimacs_file(path) -> Formula:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dimacs(fh)


def write_dimacs_file(f: Formula, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_dimacs(f))
