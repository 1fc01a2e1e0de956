"""Weighted Schroeder equation d * u(h) = lam * u over formal power series.

Read as matrices this is the eigenvector problem (d, h) u = lam u, and the
solver below is plain forward substitution on the rows of (d, h). Two regimes
are supported over the rationals:

* unit multiplier: h_1 = r with r not in {0, 1, -1}; a unique u with u_0 = 1
  exists for every d, exact through the full truncation order.
* parabolic: h = x + h_k x^k + ..., h_k != 0; a solution exists iff
  d is in 1 + x^k K[[x]], and row n determines u_{n-k+1}, so u is exact
  through N - k + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    NoSolution,
    NotRiordanPair,
    TruncationTooShort,
    UnsupportedNegativeUnit,
)
from .fps import Q, TruncatedSeries, ZERO, compose, mul, to_rational
from .group import RiordanPair, rows

UNIT_MULTIPLIER = "unit-multiplier"
PARABOLIC = "parabolic"


@dataclass(frozen=True, eq=False)
class SchroederProblem:
    d: TruncatedSeries
    h: TruncatedSeries
    lam: Q = Q(1)
    normalized: bool = False

    def __post_init__(self):
        n = min(self.d.trunc_order, self.h.trunc_order)
        object.__setattr__(self, "d", self.d.truncate(n))
        object.__setattr__(self, "h", self.h.truncate(n))
        object.__setattr__(self, "lam", to_rational(self.lam))
        if self.d.coeffs[0] == 0:
            raise NotRiordanPair("weight d must have order 0")
        if n < 1 or self.h.coeffs[0] != 0 or self.h.coeffs[1] == 0:
            raise NotRiordanPair("h must have order 1")

    @property
    def trunc_order(self) -> int:
        return self.d.trunc_order


@dataclass(frozen=True, eq=False)
class SchroederSolution:
    u: TruncatedSeries
    case: str
    k: Optional[int] = None  # index of the first nonlinear term of h (parabolic case)

    @property
    def guaranteed_order(self) -> int:
        return self.u.trunc_order


def normalize(d: TruncatedSeries, h: TruncatedSeries) -> SchroederProblem:
    """Divide through by lam = d_0, leaving d u(h) = u with d(0) = 1."""
    return SchroederProblem(d / d.coeffs[0], h, Q(1), True)


def _reach(prob: SchroederProblem) -> int:
    """How many degrees past u's truncation the residual is still determined.

    In the parabolic case with d in 1 + x^k K[[x]], row n of (d, h) has zeros
    between columns n-k+2 and n-1 and a 1 on the diagonal, so degree n of the
    residual only involves u_0..u_{n-k+1}.
    """
    h, d = prob.h.coeffs, prob.d.coeffs
    if h[1] != 1 or d[0] != prob.lam:
        return 0
    k = next((i for i in range(2, len(h)) if h[i] != 0), None)
    if k is None or any(d[i] for i in range(1, k)):
        return 0
    return k - 1


def residual(prob: SchroederProblem, u: TruncatedSeries) -> TruncatedSeries:
    """d * u(h) - lam * u through every degree the data determines.

    A parabolic solution known through N - k + 1 is checked through N.
    """
    n = min(prob.trunc_order, u.trunc_order + _reach(prob))
    if u.trunc_order < n:
        u = TruncatedSeries.of(u.coeffs, n)
    u = u.truncate(n)
    return mul(prob.d.truncate(n), compose(u, prob.h.truncate(n))) - prob.lam * u


def solve(prob: SchroederProblem) -> SchroederSolution:
    if not prob.normalized:
        if prob.lam != prob.d.coeffs[0]:
            # row 0 reads d_0 u_0 = lam u_0, impossible with u_0 = 1
            raise NoSolution(0, "lam must equal d(0) for a solution with u_0 = 1")
        prob = normalize(prob.d, prob.h)
    d, h = prob.d, prob.h
    N = prob.trunc_order
    r = h.coeffs[1]
    if r == -1:
        raise UnsupportedNegativeUnit("h_1 = -1 is a root of unity; no supported case applies")
    if r != 1:
        return _solve_unit_multiplier(d, h, r)

    k = next((i for i in range(2, N + 1) if h.coeffs[i] != 0), None)
    if k is None:
        # h = x through N: only d = 1 admits a solution, namely u = 1
        bad = next((i for i in range(1, N + 1) if d.coeffs[i] != 0), None)
        if bad is not None:
            raise NoSolution(bad, f"h = x through degree {N} and d_{bad} != 0")
        return SchroederSolution(TruncatedSeries.one(N), PARABOLIC, None)
    bad = next((i for i in range(1, k) if d.coeffs[i] != 0), None)
    if bad is not None:
        raise NoSolution(bad, f"d_{bad} != 0 with 0 < {bad} < k = {k}")
    return _solve_parabolic(d, h, k)


def _solve_unit_multiplier(d, h, r) -> SchroederSolution:
    u = [Q(1)]
    for n, row in enumerate(rows(RiordanPair(d, h))):
        if n == 0:
            continue
        s = sum((row[m] * u[m] for m in range(n) if u[m]), ZERO)
        u.append(-s / (row[n] - 1))
    return SchroederSolution(TruncatedSeries(tuple(u)), UNIT_MULTIPLIER, None)


def _solve_parabolic(d, h, k) -> SchroederSolution:
    N = d.trunc_order
    hk = h.coeffs[k]
    u = [Q(1)]
    for n, row in enumerate(rows(RiordanPair(d, h))):
        if n < k:
            continue
        # (n-k+1) h_k u_{n-k+1} = -d_{n,0} - sum_{m=1}^{n-k} d_{n,m} u_m
        s = row[0] + sum((row[m] * u[m] for m in range(1, n - k + 1) if u[m]), ZERO)
        u.append(-s / ((n - k + 1) * hk))
    assert len(u) == N - k + 2
    return SchroederSolution(TruncatedSeries(tuple(u)), PARABOLIC, k)


def order_correspondence(sol: SchroederSolution, prob: SchroederProblem, i: int) -> bool:
    """Check u in 1 + x^i K[[x]]  <=>  d in 1 + x^(i+k-1) K[[x]] on the known window."""
    if sol.case != PARABOLIC or sol.k is None:
        raise ValueError("order correspondence applies to parabolic solutions only")
    if i < 1:
        raise ValueError("i must be at least 1")
    k = sol.k
    d = prob.d / prob.d.coeffs[0] if not prob.normalized else prob.d
    if i - 1 > sol.u.trunc_order or i + k - 2 > d.trunc_order:
        raise TruncationTooShort(f"window for i = {i}, k = {k} exceeds the known coefficients")
    u_in = all(sol.u.coeffs[j] == 0 for j in range(1, i))
    d_in = all(d.coeffs[j] == 0 for j in range(1, i + k - 1))
    return u_in == d_in
