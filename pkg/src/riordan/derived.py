"""Derived series of the finite Riordan groups R_k and random samplers.

A member of R^(n) (n >= 1) is a pair with d in 1 + x^(2^n - n) K[[x]] and
h in x + x^(2^n) K[[x]]. Projecting to the (k+1) x (k+1) block clips those
windows at k, so R_k^(n) is trivial exactly when 2^n - n > k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .errors import TruncationTooShort
from .fps import TruncatedSeries
from .group import FiniteRiordanMatrix, RiordanPair, commutator, pair_from_matrix, project
from .subgroups import derived_r_windows

COEFF_RANGE = range(-3, 4)

Seed = Union[int, random.Random]


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def finite_membership(m: FiniteRiordanMatrix, n: int) -> bool:
    """Is m the projection of some member of R^(n)?"""
    pair = pair_from_matrix(m)
    if n == 0:
        return True
    k = m.n
    d_last, h_last = derived_r_windows(n)
    d, h = pair.d, pair.h
    if d.coeffs[0] != 1 or h.coeffs[1] != 1:
        return False
    if any(d.coeffs[i] for i in range(1, min(d_last, k) + 1)):
        return False
    return not any(h.coeffs[i] for i in range(2, min(h_last, k) + 1))


def derived_length(k: int) -> int:
    """Least n >= 1 with R_k^(n) trivial, i.e. least n with 2^n - n > k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = 1
    while 2 ** n - n <= k:
        n += 1
    return n


@dataclass(frozen=True)
class DerivedLengthTable:
    max_k: int
    values: tuple

    def __str__(self):
        return " ".join(str(v) for v in self.values)


def derived_table(max_k: int) -> DerivedLengthTable:
    if max_k < 0:
        raise ValueError("max_k must be non-negative")
    return DerivedLengthTable(max_k, tuple(derived_length(k) for k in range(max_k + 1)))


# --------------------------------------------------------------------------
# sampling


def _coeff(rng: random.Random, nonzero: bool = False) -> int:
    while True:
        c = rng.choice(COEFF_RANGE)
        if c or not nonzero:
            return c


def sample_derived(n: int, N: int, seed: Seed) -> RiordanPair:
    """Random pair in R^(n) with coefficients drawn from {-3, ..., 3}.

    For n = 0 the pair is unconstrained apart from d_0 != 0 and h_1 != 0.
    """
    if N < 2 ** n:
        raise TruncationTooShort(f"level {n} needs truncation order >= {2 ** n}, have {N}")
    rng = _rng(seed)
    if n == 0:
        d = [_coeff(rng, True)] + [_coeff(rng) for _ in range(N)]
        h = [0, _coeff(rng, True)] + [_coeff(rng) for _ in range(N - 1)]
        return RiordanPair.of(d, h, N)
    d_last, h_last = derived_r_windows(n)
    d = [1] + [0] * d_last + [_coeff(rng) for _ in range(N - d_last)]
    h = [0, 1] + [0] * (h_last - 1) + [_coeff(rng) for _ in range(N - h_last)]
    return RiordanPair.of(d, h, N)


def sample_gk(k: int, N: int, seed: Seed, leading_nonzero: bool = False) -> RiordanPair:
    """Random (1, h) in G_k; optionally force h_k != 0."""
    if N < k:
        raise TruncationTooShort(f"G_{k} needs truncation order >= {k}, have {N}")
    rng = _rng(seed)
    h = [0, 1] + [0] * (k - 2) + [_coeff(rng, leading_nonzero)]
    h += [_coeff(rng) for _ in range(N - k)]
    return RiordanPair.associated(TruncatedSeries.of(h, N))


def commutator_tree(depth: int, N: int, seed: Seed) -> RiordanPair:
    """An element of R^(depth) built as iterated commutators of random pairs.

    Uses only the group law, so it is independent of any closed-form
    description of the derived subgroups.
    """
    rng = _rng(seed)
    if depth == 0:
        return sample_derived(0, N, rng)
    return commutator(commutator_tree(depth - 1, N, rng), commutator_tree(depth - 1, N, rng))


def trivial_by_search(k: int, n: int, seeds: int = 4, base_seed: int = 0) -> bool:
    """Sampling oracle: do random depth-n commutators all project to I at size k?"""
    N = max(k, 1)
    for s in range(seeds):
        if not project(commutator_tree(n, N, base_seed + s), k).is_identity():
            return False
    return True


def derived_length_by_search(k: int, seeds: int = 4, base_seed: int = 0) -> int:
    """Least n at which sampled R_k^(n) elements all project to the identity."""
    n = 1
    while not trivial_by_search(k, n, seeds, base_seed):
        n += 1
    return n
