import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from riordan.commutator import (
    CommutatorWitness,
    certify_associated,
    decompose_diag,
    decompose_riordan,
    decompose_shift,
)
from riordan.derived import sample_derived, sample_gk
from riordan.errors import (
    NotInDerivedR,
    NotInG2,
    NotInGk,
    TruncationTooShort,
    UnitMultiplierError,
    ZeroLambda,
)
from riordan.fps import TruncatedSeries, series
from riordan.group import RiordanPair, commutator, inverse, multiply
from riordan.subgroups import SubgroupTag, in_gk, is_member

from strategies import gk_pairs


def assoc(*h, N=16):
    return RiordanPair.associated(series(h, N))


def multiplies_out(w):
    """Independent re-check written with multiply/inverse only."""
    n = w.verified_order
    L, R = w.left.truncate(n), w.right.truncate(n)
    lhs = multiply(inverse(L), multiply(inverse(R), multiply(L, R)))
    return lhs == w.target.truncate(n)


class TestDiag:
    @pytest.mark.parametrize("g2", [1, -3, 5])
    def test_seed_coefficient(self, g2):
        for r in (2, 3, -2):
            w = decompose_diag(assoc(0, 1, g2, 1, -1), r)
            assert w.right.h[2] == Fraction(r * g2, r - 1)

    def test_identity(self):
        w = decompose_diag(RiordanPair.identity(10))
        assert w.right.h == TruncatedSeries.x(10)

    def test_example(self):
        w = decompose_diag(assoc(0, 1, 1, 1, N=12), 2)
        assert w.verified_order == 12 and multiplies_out(w)

    def test_errors(self):
        with pytest.raises(NotInG2):
            decompose_diag(RiordanPair.of([1, 1], [0, 1, 1], 6))
        with pytest.raises(UnitMultiplierError):
            decompose_diag(assoc(0, 1, 1), 1)
        with pytest.raises(UnitMultiplierError):
            decompose_diag(assoc(0, 1, 1), -1)


class TestShift:
    def test_n2_example(self):
        w = decompose_shift(assoc(0, 1, 0, 0, 1, 1), 2, 1)
        assert in_gk(w.right, 3)
        assert w.verified_order == 16 and multiplies_out(w)

    def test_n1_against_diag(self):
        g = assoc(0, 1, 2, -1, 3)
        shift = decompose_shift(g, 1, 1)
        diag = decompose_diag(g, 2)
        assert shift.left == diag.left
        assert multiplies_out(shift) and multiplies_out(diag)

    def test_identity(self):
        w = decompose_shift(RiordanPair.identity(16), 2)
        assert w.right.h == TruncatedSeries.x(16)

    def test_errors(self):
        with pytest.raises(ZeroLambda):
            decompose_shift(assoc(0, 1, 0, 0, 1), 2, 0)
        with pytest.raises(NotInGk):
            decompose_shift(assoc(0, 1, 0, 1), 2)
        with pytest.raises(TruncationTooShort):
            decompose_shift(assoc(0, 1, N=3), 2)
        with pytest.raises(UnitMultiplierError):
            decompose_shift(assoc(0, 1, 1), 1, -2)
        with pytest.raises(ValueError):
            decompose_shift(assoc(0, 1, 1), 0)

    def test_perturbation_breaks_identity(self):
        w = decompose_shift(assoc(0, 1, 0, 0, 2, -1, 1), 2)
        for i in range(3, 10):
            h = list(w.right.h.coeffs)
            h[i] += 1
            bumped = CommutatorWitness(w.left, RiordanPair.associated(TruncatedSeries(tuple(h))),
                                       w.target, w.verified_order)
            assert not bumped.check()

    @pytest.mark.parametrize("lam", [2, -1, 3])
    def test_other_lambda(self, lam):
        g = sample_gk(4, 12, 7)
        assert multiplies_out(decompose_shift(g, 2, lam))


class TestCertificate:
    def test_depth_one(self):
        cert = certify_associated(assoc(0, 1, 3, -1), 1)
        assert cert.depth == 1 and cert.check()
        assert len(cert.root.leaves()) == 2

    def test_depth_two(self):
        cert = certify_associated(sample_gk(4, 16, 3), 2)
        assert cert.check() and len(cert.root.leaves()) == 4
        assert cert.root.evaluate() == cert.root.pair

    def test_depth_three(self):
        cert = certify_associated(sample_gk(8, 16, 5), 3)
        assert cert.check() and len(cert.root.leaves()) == 8

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_identity(self, n):
        assert certify_associated(RiordanPair.identity(16), n).check()

    def test_internal_levels(self):
        cert = certify_associated(sample_gk(4, 16, 9), 2)
        for child in (cert.root.left, cert.root.right):
            assert child.level == 1 and in_gk(child.pair, 2)


class TestRiordan:
    def test_identity(self):
        w = decompose_riordan(RiordanPair.identity(12), 1)
        assert w.left == RiordanPair.identity(12) == w.right
        assert multiplies_out(w)

    def test_n1_example(self):
        w = decompose_riordan(RiordanPair.of([1, 1], [0, 1, 1], 12), 1)
        assert w.verified_order == 12 and multiplies_out(w)

    def test_n2_example(self):
        w = decompose_riordan(RiordanPair.of([1, 0, 1], [0, 1, 0, 0, 1], 16), 2)
        assert w.verified_order == 15 and multiplies_out(w)
        for factor in (w.left, w.right):
            assert is_member(factor, SubgroupTag("derivedR", 1))

    def test_not_in_level(self):
        with pytest.raises(NotInDerivedR):
            decompose_riordan(RiordanPair.of([1, 1], [0, 1, 1], 12), 2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_weight_admissible(self, n):
        # with u = 1 the weight 1 / d(v(g)) sits in 1 + x^(2^n - n) K[[x]] iff d does
        from riordan.fps import compose, mul_inverse

        p = sample_derived(n, 16, 11)
        w = decompose_riordan(p, n)
        v, g = w.left.h, w.right.h
        d = p.d.truncate(w.verified_order)
        weight = mul_inverse(compose(d, compose(v, g)))
        lo = 2 ** n - n
        assert all(weight[i] == 0 for i in range(1, lo))
        bad = d + TruncatedSeries.monomial(1, lo - 1, d.trunc_order)
        weight = mul_inverse(compose(bad, compose(v, g)))
        assert weight[lo - 1] != 0


@settings(max_examples=15, deadline=None)
@given(gk_pairs(2, 10), st.sampled_from([2, 3, -3]))
def test_diag_sound(g, r):
    assert multiplies_out(decompose_diag(g, r))


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_shift_sound(n, seed):
    g = sample_gk(2 ** n, max(12, 2 ** (n + 1)), seed)
    w = decompose_shift(g, n)
    assert in_gk(w.right, 2 ** (n - 1) + 1)
    assert multiplies_out(w)


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 2), st.integers(0, 10 ** 6))
def test_riordan_sound(n, seed):
    w = decompose_riordan(sample_derived(n, 12, seed), n)
    assert multiplies_out(w)
    for factor in (w.left, w.right):
        assert is_member(factor, SubgroupTag("derivedR", n - 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closure(n):
    rng = random.Random(n)
    for _ in range(10):
        c = commutator(sample_derived(n - 1, 12, rng), sample_derived(n - 1, 12, rng))
        assert is_member(c, SubgroupTag("derivedR", n))
