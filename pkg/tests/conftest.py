from __future__ import annotations

from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from bohemian.matrices import IntMatrix, TernaryMatrix, _product_rows


def all_ternary(rows, cols):
    """Every ternary matrix of one shape, in odometer order."""
    for ent in product((-1, 0, 1), repeat=rows * cols):
        yield TernaryMatrix(rows, cols, ent)


def frac_rows(x):
    if isinstance(x, IntMatrix):
        return x.row_tuples()
    return tuple(tuple(e) for e in x)


def rational_inner_holds(a_rows, x_rows) -> bool:
    """AXA == A over exact rationals, for test matrices with Fraction entries."""
    a = tuple(tuple(Fraction(e) for e in r) for r in a_rows)
    x = tuple(tuple(Fraction(e) for e in r) for r in x_rows)
    return _product_rows(_product_rows(a, x), a) == a


@st.composite
def ternary_matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    ent = draw(
        st.tuples(*[st.sampled_from((-1, 0, 1)) for _ in range(rows * cols)])
    )
    return TernaryMatrix(rows, cols, ent)


@st.composite
def rank_one_matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    u = draw(
        st.tuples(*[st.sampled_from((-1, 0, 1)) for _ in range(rows)]).filter(any)
    )
    v = draw(
        st.tuples(*[st.sampled_from((-1, 0, 1)) for _ in range(cols)]).filter(any)
    )
    return TernaryMatrix.from_rows([[ui * vj for vj in v] for ui in u])


@st.composite
def signed_permutations(draw, size):
    from bohemian.matrices import SignedPermutation

    perm = draw(st.permutations(range(size)))
    signs = draw(st.tuples(*[st.sampled_from((-1, 1)) for _ in range(size)]))
    return SignedPermutation(tuple(perm), signs)
