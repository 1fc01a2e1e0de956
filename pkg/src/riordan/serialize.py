"""JSON documents for series, pairs, matrices, witnesses and certificates.

Rationals travel as strings ("p/q" or "p"), never as JSON numbers, so values
survive a round trip bit for bit.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .commutator import CertificateNode, CommutatorWitness, DerivedCertificate
from .fps import TruncatedSeries, to_rational
from .group import FiniteRiordanMatrix, RiordanPair
from .schroeder import SchroederSolution


class DocumentError(ValueError):
    """A document is malformed (wrong shape, length or scalar syntax)."""


def scalar_to_str(c) -> str:
    return str(c)


def scalar_from_doc(value):
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"rational expected as a string, got {value!r}")
    if isinstance(value, int):
        return to_rational(value)
    if not isinstance(value, str):
        raise DocumentError(f"rational expected as a string, got {value!r}")
    try:
        Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not an exact rational: {value!r}") from exc
    return to_rational(value)


def series_to_doc(s: TruncatedSeries) -> dict:
    return {"trunc_order": s.trunc_order, "coeffs": [scalar_to_str(c) for c in s.coeffs]}


def series_from_doc(doc) -> TruncatedSeries:
    if not isinstance(doc, dict) or "coeffs" not in doc or "trunc_order" not in doc:
        raise DocumentError("series document needs 'trunc_order' and 'coeffs'")
    n, coeffs = doc["trunc_order"], doc["coeffs"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError("'trunc_order' must be a non-negative integer")
    if not isinstance(coeffs, list) or len(coeffs) != n + 1:
        raise DocumentError(f"'coeffs' must list exactly trunc_order + 1 = {n + 1} values")
    return TruncatedSeries(tuple(scalar_from_doc(c) for c in coeffs))


def pair_to_doc(p: RiordanPair) -> dict:
    return {"d": series_to_doc(p.d), "h": series_to_doc(p.h)}


def pair_from_doc(doc) -> RiordanPair:
    if not isinstance(doc, dict) or "d" not in doc or "h" not in doc:
        raise DocumentError("pair document needs 'd' and 'h'")
    return RiordanPair(series_from_doc(doc["d"]), series_from_doc(doc["h"]))


def matrix_to_doc(m: FiniteRiordanMatrix) -> dict:
    return {"n": m.n, "entries": [[scalar_to_str(c) for c in row] for row in m.entries]}


def matrix_from_doc(doc) -> FiniteRiordanMatrix:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise DocumentError("matrix document needs 'entries'")
    rows = doc["entries"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError("'entries' must be a list of rows")
    try:
        m = FiniteRiordanMatrix(tuple(tuple(scalar_from_doc(c) for c in row) for row in rows))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    if "n" in doc and doc["n"] != m.n:
        raise DocumentError("'n' does not match the number of rows")
    return m


def witness_to_doc(w: CommutatorWitness) -> dict:
    return {
        "target": pair_to_doc(w.target),
        "left": pair_to_doc(w.left),
        "right": pair_to_doc(w.right),
        "verified_order": w.verified_order,
        "identity_checked": True,
    }


def witness_from_doc(doc) -> CommutatorWitness:
    for key in ("target", "left", "right", "verified_order"):
        if key not in doc:
            raise DocumentError(f"witness document is missing {key!r}")
    return CommutatorWitness(
        left=pair_from_doc(doc["left"]),
        right=pair_from_doc(doc["right"]),
        target=pair_from_doc(doc["target"]),
        verified_order=doc["verified_order"],
    )


def _node_to_doc(node: CertificateNode) -> dict:
    return {
        "level": node.level,
        "pair": pair_to_doc(node.pair),
        "left": None if node.is_leaf else _node_to_doc(node.left),
        "right": None if node.is_leaf else _node_to_doc(node.right),
    }


def _node_from_doc(doc) -> CertificateNode:
    left = doc.get("left")
    right = doc.get("right")
    return CertificateNode(
        pair=pair_from_doc(doc["pair"]),
        level=doc["level"],
        left=None if left is None else _node_from_doc(left),
        right=None if right is None else _node_from_doc(right),
    )


def certificate_to_doc(c: DerivedCertificate) -> dict:
    return {
        "depth": c.depth,
        "verified_order": c.verified_order,
        "identity_checked": True,
        "root": _node_to_doc(c.root),
    }


def certificate_from_doc(doc) -> DerivedCertificate:
    return DerivedCertificate(doc["depth"], _node_from_doc(doc["root"]), doc["verified_order"])


def solution_to_doc(sol: SchroederSolution) -> dict:
    return {
        "u": series_to_doc(sol.u),
        "case": sol.case,
        "k": sol.k,
        "guaranteed_order": sol.guaranteed_order,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2)
