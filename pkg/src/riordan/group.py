"""Riordan pairs (d, h), their matrices, and the group law.

Convention used everywhere in the package:

    (d, h)(l, m) = (d * l(h), m(h))
    (d, h)^-1    = (1 / d(hbar), hbar)        hbar = compositional inverse of h

Entry (i, j) of the matrix is [x^i] d * h^j, so column j is the series d*h^j.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence

from .errors import DegreeAboveTruncation, NotRiordanPair, NotRiordanShape
from .fps import Q, TruncatedSeries, ZERO, comp_inverse, compose, mul, mul_inverse, to_rational


@dataclass(frozen=True, eq=False)
class RiordanPair:
    """An element (d, h) of the Riordan group known through degree N.

    Both components are cut to the smaller of their truncation orders.
    """

    d: TruncatedSeries
    h: TruncatedSeries
    _columns: list = field(default_factory=list, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        d, h = self.d, self.h
        if not isinstance(d, TruncatedSeries):
            d = TruncatedSeries.of(d)
        if not isinstance(h, TruncatedSeries):
            h = TruncatedSeries.of(h)
        n = min(d.trunc_order, h.trunc_order)
        if n < 1:
            raise NotRiordanPair("a pair needs truncation order at least 1")
        d, h = d.truncate(n), h.truncate(n)
        if d.coeffs[0] == 0:
            raise NotRiordanPair("d must have order 0 (d_0 != 0)")
        if h.coeffs[0] != 0 or h.coeffs[1] == 0:
            raise NotRiordanPair("h must have order 1 (h_0 = 0, h_1 != 0)")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "h", h)

    @classmethod
    def of(cls, d: Sequence, h: Sequence, trunc_order: int) -> "RiordanPair":
        return cls(TruncatedSeries.of(d, trunc_order), TruncatedSeries.of(h, trunc_order))

    @classmethod
    def identity(cls, trunc_order: int) -> "RiordanPair":
        return cls(TruncatedSeries.one(trunc_order), TruncatedSeries.x(trunc_order))

    @classmethod
    def associated(cls, h: TruncatedSeries) -> "RiordanPair":
        """The pair (1, h)."""
        return cls(TruncatedSeries.one(h.trunc_order), h)

    @property
    def trunc_order(self) -> int:
        return self.d.trunc_order

    def truncate(self, n: int) -> "RiordanPair":
        return RiordanPair(self.d.truncate(n), self.h.truncate(n))

    def column(self, j: int) -> TruncatedSeries:
        """The generating series d*h^j of column j."""
        if j > self.trunc_order:
            raise DegreeAboveTruncation(f"column {j} is beyond truncation {self.trunc_order}")
        cols = self._columns
        if j < len(cols):
            return cols[j]
        with self._lock:
            if not cols:
                cols.append(self.d)
            while len(cols) <= j:
                cols.append(mul(cols[-1], self.h))
        return cols[j]

    def entry(self, i: int, j: int) -> Q:
        return entry(self, i, j)

    def __mul__(self, other: "RiordanPair") -> "RiordanPair":
        return multiply(self, other)

    def inverse(self) -> "RiordanPair":
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, RiordanPair):
            return NotImplemented
        return self.d == other.d and self.h == other.h

    __hash__ = None

    def __repr__(self):
        return f"RiordanPair(d={self.d}, h={self.h})"


@dataclass(frozen=True)
class FiniteRiordanMatrix:
    """The (n+1) x (n+1) leading block of a Riordan matrix."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_rational(c) for c in row) for row in self.entries)
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "FiniteRiordanMatrix") -> "FiniteRiordanMatrix":
        if self.n != other.n:
            raise ValueError("size mismatch")
        size = self.n + 1
        a, b = self.entries, other.entries
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                # lower triangular: only k in [j, i] contributes
                row.append(sum((a[i][k] * b[k][j] for k in range(j, i + 1)), ZERO))
            out.append(tuple(row))
        return FiniteRiordanMatrix(tuple(out))

    def matvec(self, vector: Sequence) -> List[Q]:
        size = self.n + 1
        return [
            sum((self.entries[i][k] * vector[k] for k in range(i + 1)), ZERO)
            for i in range(size)
        ]

    def shrink(self) -> "FiniteRiordanMatrix":
        """Delete the last row and column (the map P_{n-1})."""
        return FiniteRiordanMatrix(tuple(row[:-1] for row in self.entries[:-1]))

    def is_identity(self) -> bool:
        return all(
            c == (1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, c in enumerate(row)
        )

    def is_lower_triangular(self) -> bool:
        return all(c == 0 for i, row in enumerate(self.entries) for c in row[i + 1:])

    def tolist(self) -> list:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class ASequence:
    """A(x) with h = x * A(h); known one degree short of the pair."""

    coeffs: TruncatedSeries

    def __getitem__(self, k: int) -> Q:
        return self.coeffs[k]


def entry(p: RiordanPair, i: int, j: int) -> Q:
    if i < 0 or j < 0:
        raise IndexError("negative index")
    if i > p.trunc_order:
        raise DegreeAboveTruncation(f"row {i} is beyond truncation {p.trunc_order}")
    if j > i:
        return ZERO
    return p.column(j).coeffs[i]


def project(p: RiordanPair, n: int) -> FiniteRiordanMatrix:
    if n > p.trunc_order:
        raise DegreeAboveTruncation(f"cannot project to size {n} from truncation {p.trunc_order}")
    cols = [p.column(j).coeffs for j in range(n + 1)]
    return FiniteRiordanMatrix(
        tuple(tuple(cols[j][i] if j <= i else 0 for j in range(n + 1)) for i in range(n + 1))
    )


def multiply(p: RiordanPair, q: RiordanPair) -> RiordanPair:
    n = min(p.trunc_order, q.trunc_order)
    d, h = p.d.truncate(n), p.h.truncate(n)
    return RiordanPair(mul(d, compose(q.d, h)), compose(q.h, h))


def inverse(p: RiordanPair) -> RiordanPair:
    hbar = comp_inverse(p.h)
    return RiordanPair(mul_inverse(compose(p.d, hbar)), hbar)


def commutator(p: RiordanPair, q: RiordanPair) -> RiordanPair:
    """[p, q] = p^-1 q^-1 p q."""
    return multiply(multiply(inverse(p), inverse(q)), multiply(p, q))


def apply(p: RiordanPair, alpha: TruncatedSeries) -> TruncatedSeries:
    """The action d * alpha(h); matches the matrix-vector product column by column."""
    n = min(p.trunc_order, alpha.trunc_order)
    return mul(p.d.truncate(n), compose(alpha.truncate(n), p.h.truncate(n)))


def a_sequence(p: RiordanPair) -> ASequence:
    hbar = comp_inverse(p.h)
    # hbar / x has order 0; A = x / hbar is its reciprocal, exact through N-1
    shifted = TruncatedSeries(hbar.coeffs[1:])
    return ASequence(mul_inverse(shifted))


def rows(p: RiordanPair) -> Iterator[List[Q]]:
    """Yield rows 0..N of the matrix, built from the A-sequence recurrence.

    Only the previous row is kept, so memory stays O(N).
    """
    a = a_sequence(p).coeffs.coeffs
    d = p.d.coeffs
    prev = [d[0]]
    yield prev
    for i in range(1, p.trunc_order + 1):
        row = [d[i]]
        for j in range(1, i + 1):
            row.append(sum((a[k] * prev[j - 1 + k] for k in range(i - j + 1) if a[k]), ZERO))
        yield row
        prev = row


def pair_from_matrix(m: FiniteRiordanMatrix) -> RiordanPair:
    """Recover (d, h) through degree n from column 0 and column 1.

    Raises NotRiordanShape when the matrix is not the projection of that pair.
    """
    n = m.n
    if n < 1:
        raise NotRiordanShape("need at least a 2x2 block to read h")
    d = TruncatedSeries(tuple(m[i, 0] for i in range(n + 1)))
    col1 = TruncatedSeries(tuple(m[i, 1] for i in range(n + 1)))
    if d.coeffs[0] == 0:
        raise NotRiordanShape("entry (0,0) must be nonzero")
    h = mul(col1, mul_inverse(d))
    try:
        pair = RiordanPair(d, h)
    except NotRiordanPair as exc:
        raise NotRiordanShape(str(exc)) from exc
    if project(pair, n) != m:
        raise NotRiordanShape("columns do not form a geometric progression d, d*h, d*h^2, ...")
    return pair
