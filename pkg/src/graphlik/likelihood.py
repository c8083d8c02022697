"""Exact likelihood of a graph under the uniform vertex-addition process.

The process starts from a single vertex.  When the i-th vertex arrives it
picks a degree d uniformly from {0, ..., i-1} and then a uniform d-subset of
the existing i-1 vertices as its neighbors.  The likelihood of a graph G on t
vertices is the probability that after t steps the grown graph is isomorphic
to G.

A growth order is summarized by the back-degree sequence d_1..d_t (the degree
each vertex has into its predecessors at arrival); one ordering's probability
is prod_i 1/(i * C(i-1, d_i)).  Three independent routes to the likelihood
are implemented and cross-checked in the test suite:

  * likelihood_by_orderings: sum the formula over all t! orderings, divide by
    the automorphism count (each labeled outcome is counted |Aut| times);
  * likelihood_from_paths over enumerate_path_constructions: one
    representative per orbit of orderings under Aut(G), weights summed
    directly;
  * likelihood_exact: a subset dynamic program over induced subgraphs,
    equivalent to the orderings sum but exponential instead of factorial.

process_distribution_oracle recomputes the whole distribution for small t
straight from the definition (every labeled outcome, grouped by isomorphism
class) and anchors the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from .canonical import (
    DEFAULT_CENSUS_LIMIT,
    CanonicalKey,
    automorphism_count,
    canonical_key,
    enumerate_nonisomorphic,
)
from .errors import LimitExceededError
from .graphs import FamilySpec, Graph, family_graph, to_graph6

DEFAULT_DP_LIMIT = 20
DEFAULT_ORDERINGS_LIMIT = 9
DEFAULT_PATHS_LIMIT = 8
DEFAULT_ORACLE_LIMIT = 5


def ordering_probability(g: Graph, ordering: Sequence[int]) -> Fraction:
    """Probability that the process grows g by adding vertices in this order.

    The i-th vertex of the ordering must arrive with exactly its back-degree
    d_i = |N(ordering[i]) within ordering[:i]|; the chance of that is
    1/(i * C(i-1, d_i)) per step, multiplied over all t steps.
    """
    n = g.order
    if sorted(ordering) != list(range(n)):
        raise ValueError("ordering is not a permutation of the vertex set")
    den = 1
    prefix = 0
    for pos, v in enumerate(ordering):
        d = (g.adj[v] & prefix).bit_count()
        den *= (pos + 1) * comb(pos, d)
        prefix |= 1 << v
    return Fraction(1, den)


def likelihood_by_orderings(g: Graph, *, limit: int = DEFAULT_ORDERINGS_LIMIT) -> Fraction:
    """Likelihood as the plain sum over all t! orderings, divided by |Aut|."""
    n = g.order
    if n > limit:
        raise LimitExceededError("graph order", n, "orderings limit", limit)
    adj = g.adj
    binom = [[comb(i, d) for d in range(i + 1)] for i in range(n)]
    # many orderings share the same product of binomials; bucket them
    counts: dict[int, int] = {}
    for perm in permutations(range(n)):
        prefix = 0
        prod = 1
        for pos, v in enumerate(perm):
            prod *= binom[pos][(adj[v] & prefix).bit_count()]
            prefix |= 1 << v
        counts[prod] = counts.get(prod, 0) + 1
    total = sum(Fraction(c, p) for p, c in counts.items())
    return total / (factorial(n) * automorphism_count(g))


def likelihood_exact(g: Graph, *, dp_limit: int = DEFAULT_DP_LIMIT) -> Fraction:
    """Likelihood via the subset dynamic program (the production route).

    f(empty) = 1 and f(S) = sum over v in S of
    f(S - v) / (|S| * C(|S|-1, deg of v in the induced subgraph on S));
    f(V) is then the orderings sum, and the likelihood is f(V) / |Aut(g)|.
    Layers are keyed by subset size so only two layers live at once.
    """
    n = g.order
    if n > dp_limit:
        raise LimitExceededError("graph order", n, "dp limit", dp_limit)
    adj = g.adj
    layer: dict[int, Fraction] = {0: Fraction(1)}
    full = (1 << n) - 1
    for size in range(1, n + 1):
        inv = [Fraction(1, size * comb(size - 1, d)) for d in range(size)]
        nxt: dict[int, Fraction] = {}
        for s, fs in layer.items():
            rem = full & ~s
            while rem:
                low = rem & -rem
                rem ^= low
                v = low.bit_length() - 1
                child = s | low
                w = fs * inv[(adj[v] & s).bit_count()]
                acc = nxt.get(child)
                nxt[child] = w if acc is None else acc + w
        layer = nxt
    return layer[full] / automorphism_count(g)


# ---------------------------------------------------------------------------
# path constructions (orderings up to automorphism)

@dataclass(frozen=True)
class PathConstruction:
    """One growth order of g up to automorphism.

    ordering: the lexicographically smallest ordering in its orbit;
    back_degrees: d_i of each position; weight: the ordering probability,
    equal for every ordering in the orbit.
    """

    ordering: tuple[int, ...]
    back_degrees: tuple[int, ...]
    weight: Fraction


def enumerate_path_constructions(
    g: Graph, *, limit: int = DEFAULT_PATHS_LIMIT
) -> list[PathConstruction]:
    """All path constructions of g: one ordering per orbit under Aut(g).

    Two orderings are equivalent iff an automorphism maps one to the other
    position-by-position; equivalently, iff relabeling each by its positions
    yields the same labeled graph.  The DFS walks orderings in lexicographic
    order and keeps the first ordering for each relabeled graph, which is the
    lexicographically smallest representative.  The list has exactly
    t!/|Aut(g)| entries.
    """
    n = g.order
    if n > limit:
        raise LimitExceededError("graph order", n, "path enumeration limit", limit)
    adj = g.adj
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    order: list[int] = []
    masks: list[int] = []  # masks[p]: positions of order[p]'s neighbors among order[:p]
    pos = [0] * n

    def dfs(used: int) -> None:
        p = len(order)
        if p == n:
            key = tuple(masks)
            if key not in seen:
                seen[key] = tuple(order)
            return
        for v in range(n):
            if used >> v & 1:
                continue
            m = 0
            row = adj[v]
            while row:
                low = row & -row
                u = low.bit_length() - 1
                row ^= low
                if used >> u & 1:
                    m |= 1 << pos[u]
            pos[v] = p
            order.append(v)
            masks.append(m)
            dfs(used | 1 << v)
            masks.pop()
            order.pop()

    dfs(0)
    fact = factorial(n)
    out = []
    for key, ordering in seen.items():
        degs = tuple(m.bit_count() for m in key)
        den = fact
        for p, d in enumerate(degs):
            den *= comb(p, d)
        out.append(PathConstruction(ordering, degs, Fraction(1, den)))
    out.sort(key=lambda pc: pc.ordering)
    return out


def likelihood_from_paths(paths: Iterable[PathConstruction]) -> Fraction:
    """Likelihood as the sum of path-construction weights."""
    return sum((p.weight for p in paths), start=Fraction(0))


def path_prefix_tree(g: Graph, paths: Sequence[PathConstruction]) -> dict:
    """Rooted tree of growth prefixes: nodes are distinct labeled prefixes.

    Each path construction relabels g by positions; grouping the relabeled
    graphs by shared prefix yields the tree whose leaves are the path
    constructions.  Nodes carry the prefix graph (graph6, in position labels)
    and the number of leaves below.
    """
    entries = []
    for pc in paths:
        prefix = 0
        masks = []
        for p, v in enumerate(pc.ordering):
            m = 0
            for j in range(p):
                if g.adj[v] >> pc.ordering[j] & 1:
                    m |= 1 << j
            masks.append(m)
        entries.append((tuple(masks), pc))

    def build(group: list, depth: int) -> dict:
        # depth 0 is the empty prefix; there is no graph on zero vertices
        sub = Graph.from_edge_mask(depth, _prefix_mask(group[0][0], depth)) if depth else None
        node = {
            "graph6": to_graph6(sub) if sub else None,
            "order": depth,
            "leaves": len(group),
            "children": [],
        }
        if depth == g.order:
            node["ordering"] = list(group[0][1].ordering)
            return node
        buckets: dict[int, list] = {}
        for masks, pc in group:
            buckets.setdefault(masks[depth], []).append((masks, pc))
        for m in sorted(buckets):
            node["children"].append(build(buckets[m], depth + 1))
        return node

    return build(entries, 0)


def _prefix_mask(masks: tuple[int, ...], depth: int) -> int:
    """Edge mask of the depth-vertex prefix graph encoded by position masks."""
    mask = 0
    for v in range(depth):
        base = v * (v - 1) // 2
        row = masks[v]
        while row:
            low = row & -row
            mask |= 1 << (base + low.bit_length() - 1)
            row ^= low
    return mask


# ---------------------------------------------------------------------------
# bounds and closed forms

@dataclass(frozen=True)
class LikelihoodBounds:
    lower: Fraction
    upper: Fraction


def likelihood_bounds(g: Graph) -> LikelihoodBounds:
    """Bounds from the path-construction sum.

    Each of the t!/|Aut| weights is at most 1/t! and at least
    1/(t! * prod_i C(i-1, floor((i-1)/2))) (central binomials maximize the
    per-step denominator), giving
    1/(|Aut| * prod C(i-1, floor((i-1)/2))) <= L(g) <= 1/|Aut|.
    """
    aut = automorphism_count(g)
    prod = 1
    for i in range(1, g.order + 1):
        prod *= comb(i - 1, (i - 1) // 2)
    return LikelihoodBounds(Fraction(1, aut * prod), Fraction(1, aut))


class NoClosedFormError(ValueError):
    """The family has no implemented closed form (use the DP instead)."""


def family_closed_form(spec: FamilySpec) -> Fraction:
    """Closed-form likelihood for families that have one.

    complete/empty: 1/t!.  star (t >= 3): t/(t!)^2 * sum_{i<t} i!; the
    degenerate star on two vertices is the one-edge graph, likelihood 1/2
    (the summation form assumes a proper star and overcounts at t = 2).
    one_edge: (t-1)/t!.  matching with s edges:
    (1/t!) * sum over 2 <= i_1 < ... < i_s <= t of
    prod_j (i_j + 1 - 2j)/(i_j - 1).  path and cycle have no closed form.
    """
    t = spec.order
    if spec.kind in ("complete", "empty"):
        return Fraction(1, factorial(t))
    if spec.kind == "star":
        if t == 2:
            return Fraction(1, 2)
        return Fraction(t, factorial(t) ** 2) * sum(factorial(i) for i in range(t))
    if spec.kind == "one_edge":
        return Fraction(t - 1, factorial(t))
    if spec.kind == "matching":
        s = spec.size
        total = Fraction(0)
        for idx in combinations(range(2, t + 1), s):
            term = Fraction(1)
            for j, i in enumerate(idx, start=1):
                term *= Fraction(i + 1 - 2 * j, i - 1)
            total += term
        return total / factorial(t)
    raise NoClosedFormError(f"family {spec.kind!r} has no closed form; use the DP")


def cycle_from_path_relation(n: int, *, dp_limit: int = DEFAULT_DP_LIMIT) -> Fraction:
    """L(C_n) = L(P_{n-1}) / (n * C(n-1, 2)) for n >= 3.

    Deleting the last vertex of a grown cycle leaves a path on n-1 vertices,
    and the last vertex must arrive with back-degree 2 at exactly the two
    path ends.
    """
    if n < 3:
        raise ValueError("cycles need n >= 3")
    path = family_graph(FamilySpec("path", n - 1))
    return likelihood_exact(path, dp_limit=dp_limit) / (n * comb(n - 1, 2))


# ---------------------------------------------------------------------------
# census and the definition-level oracle

@dataclass(frozen=True)
class CensusEntry:
    """One isomorphism class: canonical representative, key, likelihood, |Aut|."""

    graph: Graph
    key: CanonicalKey
    likelihood: Fraction
    aut: int


def likelihood_census(order: int, *, limit: int = DEFAULT_CENSUS_LIMIT) -> list[CensusEntry]:
    """Likelihood of every isomorphism class on ``order`` vertices.

    Entries are sorted by (edge count, canonical key); the likelihoods sum to
    exactly 1 because the process always produces some graph.
    """
    entries = []
    for g in enumerate_nonisomorphic(order, limit=limit):
        aut = automorphism_count(g)
        entries.append(CensusEntry(g, canonical_key(g), likelihood_exact(g), aut))
    return entries


def process_distribution_oracle(
    order: int, *, limit: int = DEFAULT_ORACLE_LIMIT
) -> list[tuple[CanonicalKey, Fraction]]:
    """The full outcome distribution straight from the process definition.

    Enumerates every labeled graph on ``order`` vertices, computes its exact
    probability mass from the back-degrees of the identity labeling, and
    groups masses by canonical key.  Exponential in order^2 -- it exists to
    anchor the faster routes, not to be fast.
    """
    if order > limit:
        raise LimitExceededError("graph order", order, "oracle limit", limit)
    acc: dict[CanonicalKey, Fraction] = {}
    npairs = order * (order - 1) // 2
    for mask in range(1 << npairs):
        g = Graph.from_edge_mask(order, mask)
        den = 1
        for v in range(order):
            below = (1 << v) - 1
            den *= (v + 1) * comb(v, (g.adj[v] & below).bit_count())
        key = canonical_key(g)
        mass = Fraction(1, den)
        acc[key] = acc.get(key, Fraction(0)) + mass
    return sorted(acc.items(), key=lambda kv: kv[0].data)
