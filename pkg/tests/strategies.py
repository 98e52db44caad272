"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from extorder.antimatroid import Antimatroid
from extorder.matroid import Matroid, linear_matroid


@st.composite
def gf2_matroids(draw, max_cols: int = 6, max_rows: int = 4) -> Matroid:
    cols = draw(st.integers(1, max_cols))
    rows = draw(st.integers(1, max_rows))
    matrix = draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    perm = draw(st.permutations(range(cols)))
    return linear_matroid(matrix, 2, order=perm)


@st.composite
def antimatroids(draw, max_n: int = 6) -> Antimatroid:
    """Union-closure of the prefixes of a few words."""
    n = draw(st.integers(1, max_n))
    fam = {0}
    for word in draw(st.lists(st.permutations(range(n)), min_size=1, max_size=3)):
        cut = draw(st.integers(0, n))
        pre = 0
        for e in word[:cut]:
            pre |= 1 << e
            fam |= {f | pre for f in fam}
    return Antimatroid(n, fam)
