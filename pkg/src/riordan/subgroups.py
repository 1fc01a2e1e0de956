"""Subgroup membership tests and the banded structure of the groups G_k.

G_k is the set of pairs (1, h) with h in x + x^k K[[x]]. Every membership
test here reads coefficient windows of (d, h) directly; nothing scans matrices.
At finite truncation a test certifies membership of the truncated data only,
and the report records which window was inspected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import NotInGk, TruncationTooShort
from .fps import Q, ZERO, to_rational
from .group import RiordanPair, entry, multiply, project

KINDS = ("toeplitz", "associated", "gk", "derivedR", "derivedA")


@dataclass(frozen=True)
class SubgroupTag:
    kind: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "gk" and (self.param is None or self.param < 2):
            raise ValueError("G_k needs k >= 2")
        if self.kind in ("derivedR", "derivedA") and (self.param is None or self.param < 0):
            raise ValueError(f"{self.kind} needs a level n >= 0")

    @classmethod
    def parse(cls, text: str) -> "SubgroupTag":
        """Parse ``toeplitz``, ``associated``, ``g:K``, ``derivedR:N`` or ``derivedA:N``."""
        text = text.strip()
        low = text.lower()
        if low in ("toeplitz", "t"):
            return cls("toeplitz")
        if low in ("associated", "a"):
            return cls("associated")
        m = re.fullmatch(r"(g|gk|derivedr|deriveda):(\d+)", low)
        if not m:
            raise ValueError(f"cannot parse subgroup tag {text!r}")
        kind = {"g": "gk", "gk": "gk", "derivedr": "derivedR", "deriveda": "derivedA"}[m.group(1)]
        return cls(kind, int(m.group(2)))

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


@dataclass(frozen=True)
class Violation:
    component: str  # "d" or "h"
    index: int
    value: Q
    expected: Q


@dataclass(frozen=True)
class Membership:
    member: bool
    violation: Optional[Violation] = None
    # (component, first index, last index) of every window that was inspected
    windows: Tuple[Tuple[str, int, int], ...] = ()

    def __bool__(self):
        return self.member


def _check(series, component, lo, hi, leading=None):
    """First index in [lo, hi] where the series differs from the template.

    The template is ``leading`` at index ``lo`` (when given) and zero elsewhere.
    """
    for i in range(lo, hi + 1):
        expected = to_rational(leading) if (leading is not None and i == lo) else ZERO
        if series.coeffs[i] != expected:
            return Violation(component, i, series.coeffs[i], expected)
    return None


def _run(checks):
    windows = []
    for series, component, lo, hi, leading in checks:
        if hi < lo:
            continue
        windows.append((component, lo, hi))
        v = _check(series, component, lo, hi, leading)
        if v is not None:
            return Membership(False, v, tuple(windows))
    return Membership(True, None, tuple(windows))


def derived_r_windows(n: int) -> Tuple[int, int]:
    """Last indices that must vanish in d and h for a member of R^(n), n >= 1.

    d in 1 + x^(2^n - n) K[[x]] and h in x + x^(2^n) K[[x]].
    """
    return 2 ** n - n - 1, 2 ** n - 1


def is_member(p: RiordanPair, tag: SubgroupTag) -> Membership:
    N = p.trunc_order
    d, h = p.d, p.h
    if tag.kind == "toeplitz":
        return _run([(h, "h", 1, N, 1)])
    if tag.kind == "associated":
        return _run([(d, "d", 0, N, 1)])
    if tag.kind == "gk":
        k = tag.param
        if N < k:
            raise TruncationTooShort(f"G_{k} needs truncation order >= {k}, have {N}")
        return _run([(d, "d", 0, N, 1), (h, "h", 1, k - 1, 1)])
    n = tag.param
    if tag.kind == "derivedA":
        if n == 0:
            return _run([(d, "d", 0, N, 1)])
        if N < 2 ** n:
            raise TruncationTooShort(f"A^({n}) needs truncation order >= {2 ** n}, have {N}")
        return _run([(d, "d", 0, N, 1), (h, "h", 1, 2 ** n - 1, 1)])
    # derivedR
    if n == 0:
        return Membership(True)
    if N < 2 ** n:
        raise TruncationTooShort(f"R^({n}) needs truncation order >= {2 ** n}, have {N}")
    d_last, h_last = derived_r_windows(n)
    return _run([(d, "d", 0, d_last, 1), (h, "h", 1, h_last, 1)])


def in_gk(p: RiordanPair, k: int) -> bool:
    return bool(is_member(p, SubgroupTag("gk", k)))


def h_map(p: RiordanPair, i: int):
    """H_i((d, h)) = [x^i] h."""
    return p.h[i]


# --------------------------------------------------------------------------
# band structure


@dataclass
class DiagonalCheck:
    m: int
    region: str  # "main", "zero", "progression" or "endpoint"
    direct: List[Q]
    closed_form: List[Q]
    is_progression: bool

    @property
    def agrees(self) -> bool:
        return self.direct == self.closed_form


@dataclass
class BandReport:
    """Diagonals d_{j+m, j} of a pair whose h-part lies in G_k.

    Regions main/zero/progression are checked against the closed forms; the
    endpoint diagonal m = 2k-2 is only reported alongside its naive closed form.
    """

    k: int
    unit_d: bool
    diagonals: List[DiagonalCheck] = field(default_factory=list)

    @property
    def first_divergence(self) -> Optional[int]:
        for diag in self.diagonals:
            if diag.region != "endpoint" and not diag.agrees:
                return diag.m
        return None

    @property
    def ok(self) -> bool:
        return self.first_divergence is None

    @property
    def endpoint(self) -> Optional[DiagonalCheck]:
        for diag in self.diagonals:
            if diag.region == "endpoint":
                return diag
        return None


def _diagonal(p: RiordanPair, m: int) -> List[Q]:
    return [entry(p, j + m, j) for j in range(p.trunc_order - m + 1)]


def _is_progression(values) -> bool:
    if len(values) < 3:
        return True
    step = values[1] - values[0]
    return all(b - a == step for a, b in zip(values, values[1:]))


def gk_band_check(p: RiordanPair, k: int) -> BandReport:
    N = p.trunc_order
    if k < 2:
        raise ValueError("k must be at least 2")
    if N < 2 * k - 2:
        raise TruncationTooShort(f"band check for G_{k} needs truncation order >= {2 * k - 2}")
    if not in_gk(RiordanPair.associated(p.h), k):
        raise NotInGk(k, f"(1, h) is not in G_{k}")
    d, h = p.d, p.h
    report = BandReport(k=k, unit_d=all(c == (1 if i == 0 else 0) for i, c in enumerate(d.coeffs)))
    for m in range(0, 2 * k - 1):
        direct = _diagonal(p, m)
        js = range(len(direct))
        if m == 0:
            region, closed = "main", [d[0]] * len(direct)
        elif m <= k - 2:
            region, closed = "zero", [d[m]] * len(direct)
        else:
            region = "progression" if m <= 2 * k - 3 else "endpoint"
            closed = [d[m] + j * h[m + 1] for j in js]
        report.diagonals.append(DiagonalCheck(m, region, direct, closed, _is_progression(direct)))
    return report


@dataclass
class PartialCommutationReport:
    k: int
    commute: bool
    corner: Q  # entry (2k-1, 1) of (1,v)(1,w)
    predicted: Q  # v_{2k-1} + w_{2k-1} + k v_k w_k

    @property
    def ok(self) -> bool:
        return self.commute and self.corner == self.predicted


def partial_commutation_check(v_pair: RiordanPair, w_pair: RiordanPair, k: int) -> PartialCommutationReport:
    size = 2 * k - 1
    for pair in (v_pair, w_pair):
        if pair.trunc_order < size:
            raise TruncationTooShort(f"need truncation order >= {size}")
        if not in_gk(pair, k):
            raise NotInGk(k)
    vw = multiply(v_pair, w_pair)
    wv = multiply(w_pair, v_pair)
    v, w = v_pair.h, w_pair.h
    return PartialCommutationReport(
        k=k,
        commute=project(vw, size) == project(wv, size),
        corner=entry(vw, size, 1),
        predicted=v[size] + w[size] + k * v[k] * w[k],
    )
