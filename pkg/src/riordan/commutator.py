"""Constructive commutator decompositions with multiply-out certificates.

Every decomposition target = left^-1 right^-1 left right is solved one
coefficient at a time. At each truncation order the defining identity is
affine in exactly one new unknown, so the solver evaluates the residual with
that unknown set to 0 and to 1 and solves the resulting linear equation
(affine probing). A witness is only returned after the full identity has been
re-checked by exact multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

from .errors import (
    NoSolution,
    NotInDerivedR,
    NotInG2,
    NotInGk,
    RiordanError,
    SingularStep,
    TruncationTooShort,
    UnitMultiplierError,
    WitnessVerificationError,
    ZeroLambda,
)
from .fps import Q, TruncatedSeries, ZERO, compose, mul_inverse, to_rational
from .group import RiordanPair, commutator, multiply
from .schroeder import SchroederProblem, solve
from .subgroups import SubgroupTag, in_gk, is_member


@dataclass(frozen=True, eq=False)
class CommutatorWitness:
    """Certifies target = left^-1 right^-1 left right through verified_order."""

    left: RiordanPair
    right: RiordanPair
    target: RiordanPair
    verified_order: int

    def check(self) -> bool:
        n = self.verified_order
        lhs = commutator(self.left.truncate(n), self.right.truncate(n))
        return lhs == self.target.truncate(n)


@dataclass(eq=False)
class CertificateNode:
    """A pair together with, unless it is a leaf, its commutator factors."""

    pair: RiordanPair
    level: int
    left: Optional["CertificateNode"] = None
    right: Optional["CertificateNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def evaluate(self) -> RiordanPair:
        if self.is_leaf:
            return self.pair
        return commutator(self.left.evaluate(), self.right.evaluate())

    def leaves(self) -> List[RiordanPair]:
        if self.is_leaf:
            return [self.pair]
        return self.left.leaves() + self.right.leaves()


@dataclass(eq=False)
class DerivedCertificate:
    depth: int
    root: CertificateNode
    verified_order: int

    def check(self) -> bool:
        n = self.verified_order
        return self.root.evaluate().truncate(n) == self.root.pair.truncate(n)


def _verified(left, right, target, order) -> CommutatorWitness:
    witness = CommutatorWitness(left.truncate(order), right.truncate(order), target.truncate(order), order)
    if not witness.check():
        raise WitnessVerificationError("decomposition failed to multiply out to the target")
    return witness


def _solve_associated(
    target: RiordanPair,
    a: TruncatedSeries,
    schedule: Callable[[int], int],
    first_order: int,
) -> TruncatedSeries:
    """Find b with (1,g) = (1,a)^-1 (1,b)^-1 (1,a) (1,b).

    Equivalently (1,b)(1,a)(1,g) = (1,a)(1,b). The coefficient of x^i in the
    difference of h-parts depends affinely on b_{schedule(i)} once the lower
    coefficients are fixed; higher coefficients of b do not enter.
    """
    N = target.trunc_order
    b = [ZERO] * (N + 1)
    b[1] = Q(1)
    left = RiordanPair.associated(a)

    def probe(i, j, value):
        b[j] = to_rational(value)
        B = RiordanPair.associated(TruncatedSeries(tuple(b[: i + 1])))
        L = left.truncate(i)
        lhs = multiply(multiply(B, L), target.truncate(i))
        rhs = multiply(L, B)
        return rhs.h.coeffs[i] - lhs.h.coeffs[i]

    for i in range(first_order, N + 1):
        j = schedule(i)
        c0 = probe(i, j, 0)
        c1 = probe(i, j, 1)
        slope = c1 - c0
        if slope == 0:
            raise SingularStep(f"coefficient b_{j} is not determined at order {i}")
        b[j] = -c0 / slope
    return TruncatedSeries(tuple(b))


def decompose_diag(g_pair: RiordanPair, r=2) -> CommutatorWitness:
    """(1,g) = (1,rx)^-1 (1,v)^-1 (1,rx) (1,v) with the unique (1,v) in G_2."""
    r = to_rational(r)
    if r in (0, 1, -1):
        raise UnitMultiplierError(f"r = {r} is zero or a root of unity")
    if not in_gk(g_pair, 2):
        raise NotInG2()
    N = g_pair.trunc_order
    a = TruncatedSeries.monomial(r, 1, N)
    v = _solve_associated(g_pair, a, lambda i: i, 2)
    return _verified(RiordanPair.associated(a), RiordanPair.associated(v), g_pair, N)


def decompose_shift(g_pair: RiordanPair, n: int, lam=1) -> CommutatorWitness:
    """(1,g) = A^-1 B^-1 A B with A = (1, x + lam x^(2^(n-1))), B in G_(2^(n-1)+1).

    The new unknown at order i is b_{i - 2^(n-1) + 1}; its slope in the
    residual is proportional to lam, so any lam != 0 works (for n = 1 the
    multiplier 1 + lam must also avoid {0, 1, -1}).
    """
    lam = to_rational(lam)
    if n < 1:
        raise ValueError("level n must be at least 1")
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    size = 2 ** n
    N = g_pair.trunc_order
    if N < size:
        raise TruncationTooShort(f"level {n} needs truncation order >= {size}, have {N}")
    if not in_gk(g_pair, size):
        raise NotInGk(size)
    half = 2 ** (n - 1)
    if n == 1 and (1 + lam) in (0, 1, -1):
        raise UnitMultiplierError(f"1 + lambda = {1 + lam} is zero or a root of unity")
    a = TruncatedSeries.x(N) + TruncatedSeries.monomial(lam, half, N)
    b = _solve_associated(g_pair, a, lambda i: i - half + 1, size if n > 1 else 2)
    return _verified(RiordanPair.associated(a), RiordanPair.associated(b), g_pair, N)


def certify_associated(g_pair: RiordanPair, n: int, lam=1) -> DerivedCertificate:
    """Depth-n tree showing (1,g) in G_(2^n) is an iterated commutator.

    Each internal node at level l is the commutator of two members of
    G_(2^(l-1)); level-0 leaves are arbitrary elements of the associated
    subgroup.
    """
    if n < 1:
        raise ValueError("depth must be at least 1")
    if g_pair.trunc_order < 2 ** n:
        raise TruncationTooShort(f"level {n} needs truncation order >= {2 ** n}")
    if not is_member(g_pair, SubgroupTag("derivedA", n)):
        raise NotInGk(2 ** n)

    def build(pair, level):
        if level == 0:
            return CertificateNode(pair, 0)
        w = decompose_shift(pair, level, lam)
        return CertificateNode(pair, level, build(w.left, level - 1), build(w.right, level - 1))

    cert = DerivedCertificate(n, build(g_pair, n), g_pair.trunc_order)
    if not cert.check():
        raise WitnessVerificationError("certificate tree does not evaluate to its root")
    return cert


def decompose_riordan(p: RiordanPair, n: int) -> CommutatorWitness:
    """Write p in R^(n) as [(u, v), (f, g)] with both factors in R^(n-1).

    The identity p = (u,v)^-1 (f,g)^-1 (u,v) (f,g) splits into
        h = g o v o g^-1 o v^-1           (solved in the associated subgroup)
        [u / (u(g) d(v(g)))] f(v) = f     (a weighted Schroeder equation for f)
    with u = 1. The witness is exact through N - (2^(n-1) - 1).
    """
    if n < 1:
        raise ValueError("level n must be at least 1")
    N = p.trunc_order
    if N < 2 ** n:
        raise TruncationTooShort(f"level {n} needs truncation order >= {2 ** n}, have {N}")
    membership = is_member(p, SubgroupTag("derivedR", n))
    if not membership:
        v = membership.violation
        raise NotInDerivedR(f"{v.component}_{v.index} = {v.value}, expected {v.expected}")

    order = N - (2 ** (n - 1) - 1)
    if p == RiordanPair.identity(N):
        e = RiordanPair.identity(order)
        return _verified(e, e, p, order)

    h_target = RiordanPair.associated(p.h)
    if n == 1:
        assoc = decompose_diag(h_target, 2)
    else:
        assoc = decompose_shift(h_target, n, 1)
    v, g = assoc.left.h, assoc.right.h

    try:
        return _unit_on_left(p, v, g, order)
    except (WitnessVerificationError, NoSolution) as first:
        # the other role assignment: put the unit factor on the right
        try:
            return _unit_on_right(p, v, g, order)
        except RiordanError:
            raise first


def _weighted_solve(weight, substitution, order):
    sol = solve(SchroederProblem(weight, substitution, weight.coeffs[0]))
    if sol.u.trunc_order < order:
        raise TruncationTooShort("Schroeder solution is shorter than the promised order")
    return sol.u.truncate(order)


def _unit_on_left(p, v, g, order):
    # u = 1:  (1 / d(v(g))) f(v) = f
    weight = mul_inverse(compose(p.d, compose(v, g)))
    f = _weighted_solve(weight, v, order)
    left = RiordanPair(TruncatedSeries.one(order), v.truncate(order))
    right = RiordanPair(f, g.truncate(order))
    return _verified(left, right, p, order)


def _unit_on_right(p, v, g, order):
    # f = 1:  d(v(g)) u(g) = u
    weight = compose(p.d, compose(v, g))
    u = _weighted_solve(weight, g, order)
    left = RiordanPair(u, v.truncate(order))
    right = RiordanPair(TruncatedSeries.one(order), g.truncate(order))
    return _verified(left, right, p, order)
