"""Property suites runnable from the command line (``riordan verify``).

Each suite runs ``seeds`` independent cases; case i draws its random data
from ``random.Random(base_seed + i)``, so any failure can be replayed from the
seed recorded in the report.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List

from .commutator import decompose_diag, decompose_riordan, decompose_shift
from .derived import (
    derived_length,
    derived_length_by_search,
    sample_derived,
    sample_gk,
)
from .errors import NoSolution
from .fps import TruncatedSeries
from .group import RiordanPair, a_sequence, commutator, entry, inverse, multiply, project
from .schroeder import normalize, residual, solve
from .subgroups import SubgroupTag, gk_band_check, h_map, is_member, partial_commutation_check

# first thirteen values of the derived length of R_k, k = 0..12
REFERENCE_DERIVED_LENGTHS = (1, 2, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 5)


@dataclass
class Failure:
    case: int
    seed: int
    detail: str


@dataclass
class SuiteReport:
    suite: str
    order: int
    cases: int = 0
    failures: List[Failure] = field(default_factory=list)
    wall_time: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_doc(self) -> dict:
        doc = asdict(self)
        doc["passed"] = self.passed
        return doc


def _same_block(m1, m2, n):
    return all(m1[i, j] == m2[i, j] for i in range(n + 1) for j in range(n + 1))


def _group_axioms(rng, N, case):
    if case == 0:
        p = RiordanPair.identity(N)
        q, r = sample_derived(0, N, rng), sample_derived(0, N, rng)
    else:
        p, q, r = (sample_derived(0, N, rng) for _ in range(3))
    e = RiordanPair.identity(N)
    problems = []
    if multiply(multiply(p, q), r) != multiply(p, multiply(q, r)):
        problems.append("associativity")
    if multiply(p, e) != p or multiply(e, p) != p:
        problems.append("identity")
    if multiply(p, inverse(p)) != e or multiply(inverse(p), p) != e:
        problems.append("inverse")
    full = project(multiply(p, q), N)
    prod = project(p, N) @ project(q, N)
    if any(not _same_block(full, prod, n) for n in range(N + 1)):
        problems.append("projection homomorphism")
    return problems


def _a_sequence(rng, N, case):
    p = sample_derived(0, N, rng)
    a = a_sequence(p).coeffs
    bad = []
    for i in range(1, N + 1):
        for j in range(1, i + 1):
            rhs = sum(a[k] * entry(p, i - 1, j - 1 + k) for k in range(i - j + 1))
            if entry(p, i, j) != rhs:
                bad.append(f"({i},{j})")
    return [f"recurrence fails at {', '.join(bad[:5])}"] if bad else []


def _ks(N):
    return [k for k in (2, 3, 4) if 2 * k - 1 <= N]


def _gk_band(rng, N, case):
    problems = []
    for k in _ks(N):
        p = sample_gk(k, N, rng)
        report = gk_band_check(p, k)
        if not report.ok:
            problems.append(f"G_{k}: closed form diverges at m = {report.first_divergence}")
        # same h with a random unit d: only the main and zero bands are constant
        d = [rng.choice(range(1, 4))] + [rng.choice(range(-3, 4)) for _ in range(N)]
        q = RiordanPair(TruncatedSeries.of(d, N), p.h)
        report = gk_band_check(q, k)
        for diag in report.diagonals:
            if diag.region in ("main", "zero") and not diag.agrees:
                problems.append(f"G_{k} with d: band m = {diag.m} is not constant")
            if diag.region == "progression" and not diag.is_progression:
                problems.append(f"G_{k} with d: band m = {diag.m} is not arithmetic")
    return problems


def _h_homomorphism(rng, N, case):
    problems = []
    for k in _ks(N):
        v, w = sample_gk(k, N, rng), sample_gk(k, N, rng)
        vw = multiply(v, w)
        for i in range(2, 2 * k - 1):
            if h_map(vw, i) != h_map(v, i) + h_map(w, i):
                problems.append(f"H_{i} not additive on G_{k}")
    return problems


def _partial_commute(rng, N, case):
    problems = []
    for k in _ks(N):
        rep = partial_commutation_check(sample_gk(k, N, rng), sample_gk(k, N, rng), k)
        if not rep.commute:
            problems.append(f"G_{k}: projections at size {2 * k - 1} do not commute")
        if rep.corner != rep.predicted:
            problems.append(f"G_{k}: corner {rep.corner} != {rep.predicted}")
    return problems


def _schroeder(rng, N, case):
    problems = []
    coeff = lambda: rng.choice(range(-3, 4))
    d = TruncatedSeries.of([1] + [coeff() for _ in range(N)], N)
    h = TruncatedSeries.of([0, 2] + [coeff() for _ in range(N - 1)], N)
    prob = normalize(d, h)
    if not residual(prob, solve(prob).u).is_zero():
        problems.append("unit-multiplier residual is nonzero")
    for k in (2, 3, 4):
        if k > N:
            continue
        h = TruncatedSeries.of([0, 1] + [0] * (k - 2) + [rng.choice((-2, -1, 1, 2))]
                               + [coeff() for _ in range(N - k)], N)
        good = TruncatedSeries.of([1] + [0] * (k - 1) + [coeff() for _ in range(N - k + 1)], N)
        prob = normalize(good, h)
        if not residual(prob, solve(prob).u).is_zero():
            problems.append(f"parabolic k = {k}: residual is nonzero")
        i = rng.randrange(1, k)
        bad = TruncatedSeries.of([1] + [0] * (i - 1) + [1] + [coeff() for _ in range(N - i)], N)
        try:
            solve(normalize(bad, h))
            problems.append(f"parabolic k = {k}: d_{i} != 0 but a solution was returned")
        except NoSolution as exc:
            if exc.index != i:
                problems.append(f"parabolic k = {k}: NoSolution at {exc.index}, expected {i}")
    return problems


def _decompose(rng, N, case):
    problems = []
    checks = [("diag", lambda: decompose_diag(sample_gk(2, N, rng), 2))]
    for n in (1, 2, 3):
        if 2 ** n <= N:
            checks.append((f"shift n={n}", lambda n=n: decompose_shift(sample_gk(2 ** n, N, rng), n, 1)))
    for n in (1, 2):
        if 2 ** n <= N:
            checks.append((f"riordan n={n}", lambda n=n: decompose_riordan(sample_derived(n, N, rng), n)))
    for name, build in checks:
        witness = build()
        if not witness.check():
            problems.append(f"{name}: witness does not multiply out")
    return problems


def _derived_closure(rng, N, case):
    problems = []
    for n in (1, 2, 3):
        if 2 ** n > N:
            continue
        c = commutator(sample_derived(n - 1, N, rng), sample_derived(n - 1, N, rng))
        if not is_member(c, SubgroupTag("derivedR", n)):
            problems.append(f"commutator of R^({n - 1}) samples is outside R^({n})")
    return problems


SUITES: Dict[str, Callable] = {
    "group-axioms": _group_axioms,
    "a-sequence": _a_sequence,
    "gk-band": _gk_band,
    "h-homomorphism": _h_homomorphism,
    "partial-commute": _partial_commute,
    "schroeder": _schroeder,
    "decompose": _decompose,
    "derived-closure": _derived_closure,
}


def _derived_length_suite(report: SuiteReport):
    for k, expected in enumerate(REFERENCE_DERIVED_LENGTHS):
        report.cases += 1
        closed = derived_length(k)
        searched = derived_length_by_search(k)
        if not closed == searched == expected:
            report.failures.append(
                Failure(k, 0, f"k = {k}: closed form {closed}, search {searched}, reference {expected}")
            )
    report.notes.append(f"{report.cases - len(report.failures)}/{report.cases} values match")


def run_suite(name: str, seeds: int = 10, order: int = 16, base_seed: int = 0) -> SuiteReport:
    report = SuiteReport(suite=name, order=order)
    start = time.perf_counter()
    if name == "derived-length":
        _derived_length_suite(report)
    else:
        try:
            case_fn = SUITES[name]
        except KeyError:
            raise ValueError(f"unknown suite {name!r}") from None
        for case in range(seeds):
            seed = base_seed + case
            report.cases += 1
            try:
                problems = case_fn(random.Random(seed), order, case)
            except Exception as exc:  # a crash is a failure of that case, not of the runner
                problems = [f"{type(exc).__name__}: {exc}"]
            for detail in problems:
                report.failures.append(Failure(case, seed, detail))
    report.wall_time = time.perf_counter() - start
    return report


SUITE_NAMES = tuple(SUITES) + ("derived-length",)
