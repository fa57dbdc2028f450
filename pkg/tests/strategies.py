"""Hypothesis strategies for terms and formulas"""

from hypothesis import strategies as st

from bi_notation.lang import (
    And,
    ExistsNum,
    ForallNum,
    NumVar,
    Or,
    RelLit,
    Succ,
    numeral,
)

RELATIONS = ["eq", "lt", "le"]
NUMBER_NAMES = ["x", "y", "z"]

numerals = st.integers(min_value=0, max_value=5).map(numeral)

terms = st.recursive(
    st.one_of(numerals, st.sampled_from(NUMBER_NAMES).map(NumVar)),
    lambda inner: inner.map(Succ),
    max_leaves=3,
)


@st.composite
def relational_literals(draw, closed=False):
    args = numerals if closed else terms
    return RelLit(draw(st.sampled_from(RELATIONS)), (draw(args), draw(args)), draw(st.booleans()))


def _compound(children):
    binders = st.sampled_from(NUMBER_NAMES)
    return st.one_of(
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(ForallNum, binders, children),
        st.builds(ExistsNum, binders, children),
    )


arithmetical_formulas = st.recursive(relational_literals(), _compound, max_leaves=6)

closed_literals = relational_literals(closed=True)

seeds = st.integers(min_value=0, max_value=2**16)
