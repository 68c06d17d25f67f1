"""Shared hypothesis strategies for formula-shaped data."""

import hypothesis.strategies as st

from monocount.formula import Clause, Formula


@st.composite
def clauses_st(draw, n: int, allow_tautological: bool = False):
    width = draw(st.integers(min_value=1, max_value=min(n, 5)))
    variables = draw(
        st.lists(
            st.integers(min_value=1, max_value=n),
            min_size=width,
            max_size=width,
            unique=True,
        )
    )
    signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
    pos = frozenset(v for v, s in zip(variables, signs) if s)
    neg = frozenset(v for v, s in zip(variables, signs) if not s)
    if allow_tautological and draw(st.booleans()) and len(variables) > 1:
        neg = neg | {variables[0]}
        pos = pos | {variables[0]}
    if not pos and not neg:
        pos = frozenset({variables[0]})
        neg = frozenset(v for v in variables[1:])
    return Clause(pos, neg)


@st.composite
def formulas_st(
    draw,
    max_n: int = 8,
    max_m: int = 8,
    allow_tautological: bool = False,
    allow_duplicates: bool = True,
):
    n = draw(st.integers(min_value=1, max_value=max_n))
    m = draw(st.integers(min_value=0, max_value=max_m))
    clause_list = [draw(clauses_st(n, allow_tautological)) for _ in range(m)]
    if allow_duplicates and m >= 2 and draw(st.booleans()):
        clause_list[-1] = clause_list[0]
    return Formula(n, tuple(clause_list))
