"""Exact truncated formal power series over the rationals.

A :class:`TruncatedSeries` stores c_0..c_N and knows N, the degree through
which those coefficients are exact. Every binary operation works through the
smaller of the two truncation orders and never invents coefficients beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    CompositionOrderError,
    DegreeAboveTruncation,
    NotInvertibleForComposition,
    ZeroConstantTerm,
)

# Exact rational scalar: gmpy2's mpq, always in lowest terms with a positive
# denominator. It compares equal to the matching fractions.Fraction.
Q = type(mpq(0))
ZERO = mpq(0)

Scalar = Union[int, Fraction, Q]


def to_rational(value) -> Q:
    """Coerce ints, Fractions, mpq values and strings like ``"-3/4"`` to mpq.

    Floats are refused: exactness is the point of this package.
    """
    if type(value) is Q:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        Fraction(text)  # validates the "p/q" or "p" syntax, rejects junk early
        return mpq(text)
    if type(value).__name__ == "mpz":
        return mpq(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least c_0")
        object.__setattr__(self, "coeffs", coeffs)

    # construction ---------------------------------------------------------

    @classmethod
    def of(cls, coeffs: Iterable, trunc_order: Optional[int] = None) -> "TruncatedSeries":
        """Build from leading coefficients, zero-padding up to ``trunc_order``."""
        coeffs = list(coeffs)
        if trunc_order is None:
            trunc_order = len(coeffs) - 1
        if len(coeffs) > trunc_order + 1:
            coeffs = coeffs[: trunc_order + 1]
        coeffs += [0] * (trunc_order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: Scalar, trunc_order: int) -> "TruncatedSeries":
        return cls.of([c], trunc_order)

    @classmethod
    def zero(cls, trunc_order: int) -> "TruncatedSeries":
        return cls.of([], trunc_order)

    @classmethod
    def one(cls, trunc_order: int) -> "TruncatedSeries":
        return cls.of([1], trunc_order)

    @classmethod
    def x(cls, trunc_order: int) -> "TruncatedSeries":
        return cls.of([0, 1], trunc_order)

    @classmethod
    def monomial(cls, c: Scalar, degree: int, trunc_order: int) -> "TruncatedSeries":
        return cls.of([0] * degree + [c], trunc_order)

    # basic accessors ------------------------------------------------------

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        return coefficient(self, i)

    def truncate(self, n: int) -> "TruncatedSeries":
        if n > self.trunc_order:
            raise DegreeAboveTruncation(
                f"cannot extend a series known through degree {self.trunc_order} to {n}"
            )
        return TruncatedSeries(self.coeffs[: n + 1])

    def order(self) -> Optional[int]:
        return order(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return self + TruncatedSeries.constant(to_rational(other), self.trunc_order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        c = to_rational(other)
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, mul_inverse(other))
        c = to_rational(other)
        return TruncatedSeries(tuple(a / c for a in self.coeffs))

    def __rtruediv__(self, other):
        return mul_inverse(self) * to_rational(other)

    def __pow__(self, n: int):
        if n < 0:
            return mul_inverse(self) ** (-n)
        result = TruncatedSeries.one(self.trunc_order)
        for _ in range(n):
            result = mul(result, self)
        return result

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        # Two truncated series are compared only where both are known.
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction, Q)):
                other = TruncatedSeries.constant(other, self.trunc_order)
            else:
                return NotImplemented
        n = min(self.trunc_order, other.trunc_order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries({format_series(self)}, N={self.trunc_order})"

    def __str__(self):
        return format_series(self)


def format_series(a: TruncatedSeries) -> str:
    terms = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = "x"
        else:
            mono = f"x^{i}"
        if mono and c == 1:
            text = mono
        elif mono and c == -1:
            text = "-" + mono
        elif mono:
            text = f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}"
        else:
            text = str(c)
        terms.append(text)
    body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return f"{body} + O(x^{a.trunc_order + 1})"


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc_order, b.trunc_order)
    return TruncatedSeries(tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product through min(N_a, N_b)."""
    n = min(a.trunc_order, b.trunc_order)
    ac, bc = a.coeffs, b.coeffs
    out = [ZERO] * (n + 1)
    nonzero_b = [(j, c) for j, c in enumerate(bc[: n + 1]) if c]
    for i in range(n + 1):
        ai = ac[i]
        if not ai:
            continue
        limit = n - i
        for j, bj in nonzero_b:
            if j > limit:
                break
            out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def order(a: TruncatedSeries) -> Optional[int]:
    """Index of the first nonzero coefficient, or None when c_0..c_N all vanish."""
    for i, c in enumerate(a.coeffs):
        if c:
            return i
    return None


def coefficient(a: TruncatedSeries, i: int) -> Q:
    if i < 0:
        raise IndexError("negative degree")
    if i > a.trunc_order:
        raise DegreeAboveTruncation(
            f"[x^{i}] requested from a series known through degree {a.trunc_order}"
        )
    return a.coeffs[i]


def mul_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal of an order-0 series by forward substitution."""
    ac = a.coeffs
    if ac[0] == 0:
        raise ZeroConstantTerm("series with zero constant term has no reciprocal")
    n = a.trunc_order
    inv0 = 1 / ac[0]
    out = [inv0]
    for k in range(1, n + 1):
        s = sum((ac[j] * out[k - j] for j in range(1, k + 1) if ac[j]), ZERO)
        out.append(-s * inv0)
    return TruncatedSeries(tuple(out))


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g) through min(N_f, N_g); requires g(0) = 0."""
    if g.coeffs[0] != 0:
        raise CompositionOrderError("inner series must have zero constant term")
    n = min(f.trunc_order, g.trunc_order)
    g = TruncatedSeries(g.coeffs[: n + 1])
    # Horner: f_0 + g*(f_1 + g*(f_2 + ...))
    acc = TruncatedSeries.constant(f.coeffs[n], n)
    for i in range(n - 1, -1, -1):
        acc = mul(acc, g)
        acc = TruncatedSeries((acc.coeffs[0] + f.coeffs[i],) + acc.coeffs[1:])
    return acc


def powers(h: TruncatedSeries, count: int) -> list:
    """[h^0, h^1, ..., h^count] at h's truncation order."""
    out = [TruncatedSeries.one(h.trunc_order)]
    for _ in range(count):
        out.append(mul(out[-1], h))
    return out


def comp_inverse(h: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of an order-1 series.

    Solves hbar(h) = x coefficient by coefficient: [x^n] sum_j hbar_j h^j is
    lower triangular in hbar_1..hbar_n with diagonal h_1^n.
    """
    if h.coeffs[0] != 0 or h.trunc_order < 1 or h.coeffs[1] == 0:
        raise NotInvertibleForComposition("need h_0 = 0 and h_1 != 0")
    n = h.trunc_order
    pw = powers(h, n)
    out = [ZERO, 1 / h.coeffs[1]]
    for m in range(2, n + 1):
        s = sum((out[j] * pw[j].coeffs[m] for j in range(1, m) if out[j]), ZERO)
        out.append(-s / pw[m].coeffs[m])
    return TruncatedSeries(tuple(out))


def series(coeffs: Sequence, trunc_order: Optional[int] = None) -> TruncatedSeries:
    """Shorthand for :meth:`TruncatedSeries.of`."""
    return TruncatedSeries.of(coeffs, trunc_order)
