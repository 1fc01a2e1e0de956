"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from riordan.fps import TruncatedSeries
from riordan.group import RiordanPair

small = st.integers(-4, 4)
nonzero_small = small.filter(bool)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


@st.composite
def series(draw, N=None, min_N=1, max_N=8, lead=None):
    N = draw(st.integers(min_N, max_N)) if N is None else N
    coeffs = [draw(rationals) for _ in range(N + 1)]
    if lead == "unit":
        coeffs[0] = draw(nonzero_rationals)
    elif lead == "order1":
        coeffs[0] = 0
        coeffs[1] = draw(nonzero_rationals)
    return TruncatedSeries.of(coeffs, N)


@st.composite
def pairs(draw, N=None, min_N=1, max_N=8):
    N = draw(st.integers(min_N, max_N)) if N is None else N
    return RiordanPair(draw(series(N=N, lead="unit")), draw(series(N=N, lead="order1")))


@st.composite
def gk_pairs(draw, k, N):
    h = [0, 1] + [0] * (k - 2) + [draw(small) for _ in range(N - k + 1)]
    return RiordanPair.associated(TruncatedSeries.of(h, N))
