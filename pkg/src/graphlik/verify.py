"""Self-verification suites: exact invariants plus a seeded statistical check.

Every suite returns CheckResult rows; the CLI ``verify`` verb and the service
``/verify`` endpoint run them and report pass/fail per property.  The golden
table below freezes the full outcome distribution of the process for t <= 4
(18 isomorphism classes); everything else is checked against independently
computed routes, not against itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt

from .canonical import (
    automorphism_count,
    automorphism_count_by_enumeration,
    canonical_key,
    enumerate_nonisomorphic,
)
from .graphs import FamilySpec, Graph, complement, family_graph
from .growth import DEFAULT_SEED, empirical_distribution
from .likelihood import (
    cycle_from_path_relation,
    enumerate_path_constructions,
    family_closed_form,
    likelihood_bounds,
    likelihood_by_orderings,
    likelihood_census,
    likelihood_exact,
    likelihood_from_paths,
    process_distribution_oracle,
)

# number of isomorphism classes on 1..7 vertices
KNOWN_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}

# frozen reference distribution for t <= 4: (order, edges, likelihood)
GOLDEN_TABLE: list[tuple[int, tuple[tuple[int, int], ...], Fraction]] = [
    (1, (), Fraction(1)),
    (2, (), Fraction(1, 2)),
    (2, ((0, 1),), Fraction(1, 2)),
    (3, (), Fraction(1, 6)),
    (3, ((0, 1),), Fraction(1, 3)),
    (3, ((0, 1), (1, 2)), Fraction(1, 3)),
    (3, ((0, 1), (0, 2), (1, 2)), Fraction(1, 6)),
    (4, (), Fraction(1, 24)),
    (4, ((0, 1),), Fraction(1, 8)),
    (4, ((0, 1), (2, 3)), Fraction(1, 36)),
    (4, ((0, 1), (1, 2)), Fraction(13, 72)),
    (4, ((0, 1), (1, 2), (2, 3)), Fraction(1, 9)),
    (4, ((0, 1), (1, 2), (2, 3), (0, 3)), Fraction(1, 36)),
    (4, ((0, 1), (0, 2), (0, 3)), Fraction(5, 72)),
    (4, ((0, 1), (0, 2), (1, 2)), Fraction(5, 72)),
    (4, ((0, 1), (0, 2), (1, 2), (2, 3)), Fraction(13, 72)),
    (4, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3)), Fraction(1, 8)),
    (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), Fraction(1, 24)),
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, failures: list[str], ok_detail: str) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:5])
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        return CheckResult(name, False, shown + more)
    return CheckResult(name, True, ok_detail)


def check_golden() -> CheckResult:
    """The frozen t <= 4 reference distribution matches the DP exactly."""
    failures = []
    for order, edges, expect in GOLDEN_TABLE:
        g = Graph.from_edges(order, edges)
        got = likelihood_exact(g)
        if got != expect:
            failures.append(f"order {order} edges {list(edges)}: {got} != {expect}")
    by_order: dict[int, Fraction] = {}
    for order, _, expect in GOLDEN_TABLE:
        by_order[order] = by_order.get(order, Fraction(0)) + expect
    for order, total in by_order.items():
        if total != 1:
            failures.append(f"golden rows for order {order} sum to {total}, not 1")
    return _result("golden", failures, f"{len(GOLDEN_TABLE)} reference values match the DP")


def check_census_normalization(max_order: int = 6) -> CheckResult:
    """Census likelihoods sum to exactly 1 and class counts are right."""
    failures = []
    for t in range(1, max_order + 1):
        rows = likelihood_census(t)
        total = sum((r.likelihood for r in rows), start=Fraction(0))
        if total != 1:
            failures.append(f"t={t}: census sums to {total}")
        want = KNOWN_CLASS_COUNTS.get(t)
        if want is not None and len(rows) != want:
            failures.append(f"t={t}: {len(rows)} classes, expected {want}")
    return _result(
        "census", failures, f"census sums to 1 with correct class counts for t <= {max_order}"
    )


def check_definition_oracle(max_order: int = 5) -> CheckResult:
    """The DP census equals the brute-force definition-level distribution."""
    failures = []
    for t in range(1, max_order + 1):
        oracle = dict(process_distribution_oracle(t))
        census = {r.key: r.likelihood for r in likelihood_census(t)}
        if oracle != census:
            for key in sorted(set(oracle) | set(census), key=lambda k: k.data):
                a, b = oracle.get(key), census.get(key)
                if a != b:
                    failures.append(f"t={t} {key.graph6}: oracle {a} vs census {b}")
    return _result(
        "oracle", failures, f"definition-level distribution matches the census for t <= {max_order}"
    )


@dataclass(frozen=True)
class RouteRecord:
    """Per-class aggregates shared by the route/path-count checks."""

    graph6: str
    order: int
    aut: int
    dp: Fraction
    orderings: Fraction
    paths_sum: Fraction
    n_paths: int
    weights_ok: bool  # every weight w satisfies 0 < w and w * t! * prod C = 1


@lru_cache(maxsize=8)
def _route_records(order: int) -> tuple[RouteRecord, ...]:
    records = []
    fact = factorial(order)
    for g in enumerate_nonisomorphic(order):
        paths = enumerate_path_constructions(g)
        weights_ok = True
        total = Fraction(0)
        for p in paths:
            total += p.weight
            prod = 1
            for i, d in enumerate(p.back_degrees):
                prod *= comb(i, d)
            if not (0 < p.weight <= 1 and p.weight * fact * prod == 1):
                weights_ok = False
        records.append(
            RouteRecord(
                canonical_key(g).graph6,
                order,
                automorphism_count(g),
                likelihood_exact(g),
                likelihood_by_orderings(g),
                total,
                len(paths),
                weights_ok,
            )
        )
    return tuple(records)


def check_route_agreement(max_order: int = 6) -> CheckResult:
    """DP, orderings sum, and path-construction sum agree exactly per class."""
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        for r in _route_records(t):
            classes += 1
            if not (r.dp == r.orderings == r.paths_sum):
                failures.append(
                    f"{r.graph6}: dp {r.dp}, orderings {r.orderings}, paths {r.paths_sum}"
                )
            if not r.weights_ok:
                failures.append(f"{r.graph6}: some path weight breaks w * t! * prod C = 1")
    return _result("routes", failures, f"three routes agree on all {classes} classes, t <= {max_order}")


def check_path_counts(max_order: int = 6) -> CheckResult:
    """|paths| * |Aut| = t! for every class (orbit counting)."""
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        fact = factorial(t)
        for r in _route_records(t):
            classes += 1
            if r.n_paths * r.aut != fact:
                failures.append(f"{r.graph6}: {r.n_paths} paths * aut {r.aut} != {t}!")
            if r.n_paths < 1:
                failures.append(f"{r.graph6}: no path constructions")
    return _result("paths", failures, f"path count * aut = t! on all {classes} classes, t <= {max_order}")


def check_aut_oracle(max_order: int = 6) -> CheckResult:
    """Orbit-stabilizer automorphism counts match full permutation enumeration."""
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        for g in enumerate_nonisomorphic(t):
            classes += 1
            fast = automorphism_count(g)
            slow = automorphism_count_by_enumeration(g)
            if fast != slow:
                failures.append(f"{canonical_key(g).graph6}: chain {fast} vs enumeration {slow}")
    return _result("aut", failures, f"automorphism counts verified on {classes} classes, t <= {max_order}")


def check_closed_forms(max_order: int = 9) -> CheckResult:
    """Closed-form families match the DP exactly."""
    failures = []

    def expect_equal(label: str, closed: Fraction, g: Graph) -> None:
        dp = likelihood_exact(g)
        if closed != dp:
            failures.append(f"{label}: closed form {closed} vs dp {dp}")

    for t in range(2, max_order + 1):
        expect_equal(f"complete t={t}", family_closed_form(FamilySpec("complete", t)),
                     family_graph(FamilySpec("complete", t)))
        expect_equal(f"empty t={t}", family_closed_form(FamilySpec("empty", t)),
                     family_graph(FamilySpec("empty", t)))
        expect_equal(f"star t={t}", family_closed_form(FamilySpec("star", t)),
                     family_graph(FamilySpec("star", t)))
        expect_equal(f"one_edge t={t}", family_closed_form(FamilySpec("one_edge", t)),
                     family_graph(FamilySpec("one_edge", t)))
        if t >= 3:
            # the summation form itself, beyond the degenerate t = 2 case
            summed = Fraction(t, factorial(t) ** 2) * sum(factorial(i) for i in range(t))
            if summed != likelihood_exact(family_graph(FamilySpec("star", t))):
                failures.append(f"star summation form fails at t={t}")
        for s in range(0, 4):
            if 2 * s <= t:
                spec = FamilySpec("matching", t, s)
                expect_equal(f"matching t={t} s={s}", family_closed_form(spec), family_graph(spec))
    for n in range(3, max_order + 1):
        got = cycle_from_path_relation(n)
        dp = likelihood_exact(family_graph(FamilySpec("cycle", n)))
        if got != dp:
            failures.append(f"cycle n={n}: relation {got} vs dp {dp}")
    return _result("closed-forms", failures, f"all closed forms match the DP for t <= {max_order}")


def check_complement_invariance(max_order: int = 6) -> CheckResult:
    """L(g) = L(complement(g)) and L(g) > 0 for every class."""
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        for g in enumerate_nonisomorphic(t):
            classes += 1
            lg = likelihood_exact(g)
            lc = likelihood_exact(complement(g))
            if lg != lc:
                failures.append(f"{canonical_key(g).graph6}: {lg} vs complement {lc}")
            if lg <= 0:
                failures.append(f"{canonical_key(g).graph6}: non-positive likelihood {lg}")
    return _result(
        "complement", failures, f"complement invariance and positivity on {classes} classes, t <= {max_order}"
    )


def check_bounds(max_order: int = 6) -> CheckResult:
    """1/(|Aut| * prod central binomials) <= L <= 1/|Aut| for nonempty classes."""
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        for g in enumerate_nonisomorphic(t):
            if g.edge_count == 0:
                continue
            classes += 1
            b = likelihood_bounds(g)
            lg = likelihood_exact(g)
            if not (b.lower <= lg <= b.upper):
                failures.append(f"{canonical_key(g).graph6}: {lg} outside [{b.lower}, {b.upper}]")
    return _result("bounds", failures, f"bounds hold on {classes} nonempty classes, t <= {max_order}")


def check_constructibility(max_order: int = 6) -> CheckResult:
    """Every graph has at least one path construction and positive likelihood.

    This is the finite content of the almost-sure construction claim: any
    target, here every class up to the order bound, is produced with positive
    probability per window of its size, hence eventually under i.i.d. runs.
    """
    failures = []
    classes = 0
    for t in range(1, max_order + 1):
        for r in _route_records(t):
            classes += 1
            if r.n_paths < 1 or r.dp <= 0:
                failures.append(f"{r.graph6}: paths {r.n_paths}, likelihood {r.dp}")
    return _result(
        "constructibility", failures, f"positive likelihood and a witness ordering on {classes} classes"
    )


def check_simulation(
    samples: int = 100_000, seed: int = DEFAULT_SEED, max_order: int = 4,
    *, repeat_order: int | None = None,
) -> CheckResult:
    """Empirical class frequencies sit within 4 standard errors of exact values.

    One seeded run of ``samples`` growths per order; every class's frequency
    must lie inside p_hat +- 4 * sqrt(p_hat(1-p_hat)/n) of the exact
    likelihood.  With ``repeat_order`` set, that order is run twice to verify
    the run is deterministic given the seed.
    """
    failures = []
    bands = 0
    kept: dict | None = None
    for t in range(1, max_order + 1):
        counts = empirical_distribution(t, samples, seed)
        if t == repeat_order:
            kept = counts
        exact = {r.key: r.likelihood for r in likelihood_census(t)}
        for key, lk in exact.items():
            bands += 1
            hits = counts.get(key, 0)
            p_hat = hits / samples
            stderr = sqrt(p_hat * (1 - p_hat) / samples)
            if abs(p_hat - float(lk)) > 4 * stderr:
                failures.append(
                    f"t={t} {key.graph6}: p_hat {p_hat:.6f} vs exact {float(lk):.6f} "
                    f"(4*stderr {4 * stderr:.6f})"
                )
        unknown = set(counts) - set(exact)
        if unknown:
            failures.append(f"t={t}: simulated classes missing from census: {len(unknown)}")
    if repeat_order is not None:
        if kept is None:
            kept = empirical_distribution(repeat_order, samples, seed)
        again = empirical_distribution(repeat_order, samples, seed)
        if again != kept:
            failures.append(f"t={repeat_order}: identical seed gave different counts")
    return _result(
        "simulate", failures,
        f"{bands} class frequencies within 4*stderr over {samples} samples (seed {seed})",
    )


SUITES = {
    "golden": lambda opts: check_golden(),
    "census": lambda opts: check_census_normalization(opts.get("census_order", 6)),
    "oracle": lambda opts: check_definition_oracle(opts.get("oracle_order", 5)),
    "routes": lambda opts: check_route_agreement(opts.get("max_order", 6)),
    "paths": lambda opts: check_path_counts(opts.get("max_order", 6)),
    "aut": lambda opts: check_aut_oracle(opts.get("max_order", 6)),
    "closed-forms": lambda opts: check_closed_forms(opts.get("closed_form_order", 9)),
    "complement": lambda opts: check_complement_invariance(opts.get("max_order", 6)),
    "bounds": lambda opts: check_bounds(opts.get("max_order", 6)),
    "constructibility": lambda opts: check_constructibility(opts.get("max_order", 6)),
    "simulate": lambda opts: check_simulation(
        opts.get("samples", 100_000), opts.get("seed", DEFAULT_SEED),
        opts.get("simulate_order", 4),
    ),
}


def run_suites(names: list[str] | None = None, **opts) -> list[CheckResult]:
    """Run the named suites (all of them by default), in declaration order."""
    if names is None:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; available: {list(SUITES)}")
    return [SUITES[n](opts) for n in names]
