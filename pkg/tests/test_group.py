from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from riordan.errors import DegreeAboveTruncation, NotRiordanPair, NotRiordanShape
from riordan.fps import TruncatedSeries, comp_inverse, mul, mul_inverse, series
from riordan.group import (
    FiniteRiordanMatrix,
    RiordanPair,
    a_sequence,
    apply,
    commutator,
    entry,
    inverse,
    multiply,
    pair_from_matrix,
    project,
    rows,
)
from riordan.subgroups import in_gk

from strategies import gk_pairs, pairs

N = 10


def pascal(N=N):
    one_over = series([1] * (N + 1))
    return RiordanPair(one_over, series([0] + [1] * N))


def identity(N=N):
    return RiordanPair.identity(N)


class TestPair:
    @pytest.mark.parametrize("d,h", [([0, 1], [0, 1]), ([1, 1], [1, 1]), ([1, 1], [0, 0, 1])])
    def test_rejects_bad_orders(self, d, h):
        with pytest.raises(NotRiordanPair):
            RiordanPair.of(d, h, 3)

    def test_common_truncation(self):
        p = RiordanPair(series([1, 2, 3, 4]), series([0, 1, 1]))
        assert p.trunc_order == 2


class TestEntry:
    def test_pascal_is_binomial(self):
        p = pascal()
        for i in range(7):
            for j in range(7):
                assert entry(p, i, j) == comb(i, j)

    def test_identity(self):
        p = identity()
        assert all(entry(p, i, j) == (i == j) for i in range(N + 1) for j in range(N + 1))

    def test_diagonal(self):
        p = RiordanPair.of([3, 1, 4], [0, 2, 7], N)
        assert all(entry(p, i, i) == 3 * 2 ** i for i in range(N + 1))

    def test_beyond_truncation(self):
        with pytest.raises(DegreeAboveTruncation):
            entry(pascal(4), 5, 0)


class TestProject:
    def test_identity_block(self):
        assert project(identity(), 3).is_identity()

    def test_pascal_block(self):
        assert project(pascal(), 2).tolist() == [[1, 0, 0], [1, 1, 0], [1, 2, 1]]

    def test_shrink_is_previous_projection(self):
        p = RiordanPair.of([2, -1, 3], [0, 1, 5, -2], N)
        for n in range(1, N + 1):
            assert project(p, n).shrink() == project(p, n - 1)

    def test_lower_triangular(self):
        assert project(pascal(), N).is_lower_triangular()


class TestMultiply:
    def test_identity(self):
        p = pascal()
        assert multiply(p, identity()) == p
        assert multiply(identity(), p) == p

    def test_g2_corner(self):
        # entry (3,1) of (1,v)(1,w) with v, w in G_2
        v = RiordanPair.associated(series([0, 1, 2, -3], N))
        w = RiordanPair.associated(series([0, 1, 5, 7], N))
        assert entry(multiply(v, w), 3, 1) == -3 + 7 + 2 * 2 * 5

    def test_inverse_gives_identity(self):
        p = pascal()
        assert multiply(p, inverse(p)) == identity()


class TestInverse:
    def test_identity(self):
        assert inverse(identity()) == identity()

    def test_diagonal(self):
        p = RiordanPair.of([5], [0, 3], N)
        assert inverse(p) == RiordanPair.of([Fraction(1, 5)], [0, Fraction(1, 3)], N)

    def test_pascal(self):
        alt = [(-1) ** i for i in range(N + 1)]
        expected = RiordanPair(series(alt), series([0] + alt[:-1]))
        assert inverse(pascal()) == expected


class TestApply:
    def test_identity(self):
        alpha = series([1, 2, 3, 4], N)
        assert apply(identity(), alpha) == alpha

    def test_constant(self):
        p = RiordanPair.of([2, 3, 5], [0, 1, 1], N)
        assert apply(p, TruncatedSeries.one(N)) == p.d

    def test_pascal_geometric(self):
        out = apply(pascal(), series([1] * (N + 1)))
        assert out == series([2 ** i for i in range(N + 1)])
        assert list(out.coeffs) == project(pascal(), N).matvec([1] * (N + 1))


class TestASequence:
    def test_toeplitz(self):
        a = a_sequence(RiordanPair.of([1, 4, 2], [0, 1], N))
        assert a.coeffs == TruncatedSeries.one(N - 1)

    def test_pascal(self):
        assert a_sequence(pascal()).coeffs == series([1, 1], N - 1)

    def test_independent_oracle(self):
        p = pascal()
        oracle = mul_inverse(TruncatedSeries(comp_inverse(p.h).coeffs[1:]))
        assert a_sequence(p).coeffs == oracle

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_gk_shape(self, k):
        h = series([0, 1] + [0] * (k - 2) + [3, -1, 2, 5, 1, -2, 4], 2 * k)
        a = a_sequence(RiordanPair.associated(h)).coeffs
        assert a[0] == 1
        assert all(a[i] == 0 for i in range(1, k - 1))
        for l in range(k, 2 * k - 1):
            assert a[l - 1] == h[l]


class TestCommutator:
    def test_trivial(self):
        p = pascal()
        assert commutator(p, p) == identity()
        assert commutator(p, identity()) == identity()

    def test_g2_lands_in_g4(self):
        v = RiordanPair.associated(series([0, 1, 2, -1, 3, 1], N))
        w = RiordanPair.associated(series([0, 1, -3, 2, 0, 1], N))
        assert in_gk(commutator(v, w), 4)


class TestMatrix:
    def test_recover_pair(self):
        p = RiordanPair.of([2, -1, 3], [0, 1, 5, -2], 6)
        assert pair_from_matrix(project(p, 6)) == p

    def test_rejects_non_riordan(self):
        m = project(pascal(3), 3).tolist()
        m[3][3] = 2
        with pytest.raises(NotRiordanShape):
            pair_from_matrix(FiniteRiordanMatrix(tuple(map(tuple, m))))

    def test_rows_match_entries(self):
        p = RiordanPair.of([2, -1, 3], [0, 3, 5, -2], 8)
        for i, row in enumerate(rows(p)):
            assert row == [entry(p, i, j) for j in range(i + 1)]


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(1, 7))
def test_group_axioms(data, N):
    p, q, r = (data.draw(pairs(N=N)) for _ in range(3))
    e = RiordanPair.identity(N)
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    assert multiply(p, e) == p == multiply(e, p)
    assert multiply(p, inverse(p)) == e == multiply(inverse(p), p)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(1, 7))
def test_projection_homomorphism(data, N):
    p, q = data.draw(pairs(N=N)), data.draw(pairs(N=N))
    pq = multiply(p, q)
    for n in range(N + 1):
        assert project(pq, n) == project(p, n) @ project(q, n)


@settings(max_examples=40, deadline=None)
@given(pairs())
def test_a_sequence_recurrence(p):
    a = a_sequence(p).coeffs
    for i in range(1, p.trunc_order + 1):
        for j in range(1, i + 1):
            assert entry(p, i, j) == sum(a[k] * entry(p, i - 1, j - 1 + k) for k in range(i - j + 1))


@given(pairs())
def test_columns_geometric(p):
    for j in range(p.trunc_order):
        assert p.column(j + 1) == mul(p.h, p.column(j))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_apply_is_matvec(data):
    p = data.draw(pairs())
    alpha = [data.draw(st.integers(-5, 5)) for _ in range(p.trunc_order + 1)]
    for n in range(p.trunc_order + 1):
        out = apply(p.truncate(n) if n else p.truncate(1), series(alpha, max(n, 1)))
        assert list(out.coeffs[: n + 1]) == project(p, n).matvec(alpha[: n + 1])


@given(gk_pairs(3, 6), gk_pairs(3, 6))
def test_commutator_of_gk_is_in_g2k(v, w):
    assert project(commutator(v, w), 5).is_identity()
