"""Canonical labeling, isomorphism testing, automorphism counting, census.

The canonical form of a graph is the lexicographically smallest upper-triangle
adjacency bitstring over all vertex orderings, read in graph6 bit order.  The
canonical key is therefore simply the graph6 encoding of the best relabeling,
which makes keys printable and directly comparable across runs and platforms.

The search is a branch-and-bound DFS over orderings: placing a vertex at
position p fixes the next p bits (its adjacency to the prefix), so prefixes
are compared block-by-block against the best complete ordering found so far.
Automorphisms discovered when two orderings tie are reused to prune sibling
branches that are images of an already-explored branch; that keeps highly
symmetric graphs (empty, complete, vertex-transitive) from exploding into t!
equal branches.  This is deliberately not a research-grade canonicalizer --
it is exact and fast enough for the configured limits.

Plain enumeration fallbacks over all t! permutations are kept as independent
test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import LimitExceededError
from .graphs import Graph, parse_graph6, relabel, to_graph6

DEFAULT_CANONICAL_LIMIT = 16
DEFAULT_CENSUS_LIMIT = 7
DEFAULT_AUT_LIMIT = 20  # matches the subset-DP limit; likelihood_exact divides by |Aut|

_MAX_RECORDED_AUTOS = 512  # pruning strength only; correctness never depends on it


@dataclass(frozen=True)
class CanonicalKey:
    """Canonical form of an isomorphism class: graph6 bytes of the best relabeling.

    Two graphs have equal keys iff they are isomorphic.
    """

    data: bytes

    @property
    def graph6(self) -> str:
        return self.data.decode("ascii")

    def __lt__(self, other: "CanonicalKey") -> bool:
        return self.data < other.data


def canonical_key(g: Graph, *, limit: int = DEFAULT_CANONICAL_LIMIT) -> CanonicalKey:
    """Canonical key of g's isomorphism class."""
    if g.order > limit:
        raise LimitExceededError("graph order", g.order, "canonical limit", limit)
    return CanonicalKey(to_graph6(canonical_relabel(g, limit=limit)).encode("ascii"))


def canonical_relabel(g: Graph, *, limit: int = DEFAULT_CANONICAL_LIMIT) -> Graph:
    """The canonical representative of g's isomorphism class."""
    if g.order > limit:
        raise LimitExceededError("graph order", g.order, "canonical limit", limit)
    return relabel(g, _min_ordering(g))


def _min_ordering(g: Graph) -> tuple[int, ...]:
    """Vertex ordering whose relabeling minimizes the adjacency bitstring.

    Branch-and-bound over orderings with two automorphism prunes.  A leaf
    whose bitstring ties the incumbent certifies an automorphism a (it maps
    best_order[i] to order[i]); siblings are skipped when they lie in the
    orbit of an already-explored sibling under the group generated by the
    recorded automorphisms that fix the current prefix pointwise.  A tie
    also triggers a backjump: if the tying leaf first differs from the
    incumbent at position j, then a maps the incumbent's depth-j subtree
    (fully explored, since candidates are tried in sorted order) onto the
    current one, so every level below j is redundant.  Without the backjump,
    plateau-heavy graphs (empty, complete, vertex-transitive) degrade toward
    factorial search.
    """
    n = g.order
    if n == 1:
        return (0,)
    adj = g.adj

    best_blocks: list[int] | None = None
    best_order: list[int] = []
    autos: list[tuple[int, ...]] = []
    auto_set: set[tuple[int, ...]] = set()

    order: list[int] = []
    blocks: list[int] = []
    used = 0
    NO_JUMP = n

    def in_orbit_of_tried(v: int, tried: list[int], p: int) -> bool:
        """Is v reachable from a tried sibling under prefix-fixing autos?"""
        gens = [a for a in autos if all(a[order[j]] == order[j] for j in range(p))]
        if not gens or not tried:
            return False
        seen = set(tried)
        frontier = list(tried)
        while frontier:
            u = frontier.pop()
            for a in gens:
                w = a[u]
                if w == v:
                    return True
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return False

    def dfs() -> int:
        nonlocal best_blocks, best_order, used
        p = len(order)
        if best_blocks is not None and blocks > best_blocks[:p]:
            return NO_JUMP
        if p == n:
            if best_blocks is None or blocks < best_blocks:
                best_blocks = blocks.copy()
                best_order = order.copy()
                return NO_JUMP
            # equal bitstrings: best_order[i] -> order[i] preserves adjacency
            a = [0] * n
            for i in range(n):
                a[best_order[i]] = order[i]
            ta = tuple(a)
            if ta not in auto_set and len(autos) < _MAX_RECORDED_AUTOS:
                auto_set.add(ta)
                autos.append(ta)
            for j in range(n):
                if order[j] != best_order[j]:
                    return j  # backjump: subtree below j is an image of a done one
            return NO_JUMP  # unreachable: leaves are distinct permutations

        cands = []
        for v in range(n):
            if used >> v & 1:
                continue
            av = adj[v]
            b = 0
            for j in range(p):
                b = b << 1 | (av >> order[j] & 1)
            cands.append((b, v))
        cands.sort()

        tried: list[int] = []
        for b, v in cands:
            if best_blocks is not None and blocks == best_blocks[:p] and b > best_blocks[p]:
                break  # sorted: every later candidate is worse
            if in_orbit_of_tried(v, tried, p):
                tried.append(v)
                continue
            order.append(v)
            blocks.append(b)
            used |= 1 << v
            r = dfs()
            used &= ~(1 << v)
            blocks.pop()
            order.pop()
            tried.append(v)
            if r < p:
                return r
        return NO_JUMP

    dfs()
    return tuple(best_order)


# ---------------------------------------------------------------------------
# isomorphism

def are_isomorphic(g: Graph, h: Graph, *, limit: int = DEFAULT_CANONICAL_LIMIT) -> bool:
    """Isomorphism test; agrees with canonical-key equality by construction."""
    if g.order != h.order or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_key(g, limit=limit) == canonical_key(h, limit=limit)


# ---------------------------------------------------------------------------
# automorphism counting (orbit-stabilizer chain)

def automorphism_count(g: Graph, *, limit: int = DEFAULT_AUT_LIMIT) -> int:
    """|Aut(g)| via the orbit-stabilizer chain.

    Fixing vertices 0..k-1 pointwise, the orbit of k is the set of images w
    for which some automorphism extends {0->0, ..., k-1->k-1, k->w}; the
    group order is the product of those orbit sizes.  Each membership test is
    a pruned extension search, so huge groups (e.g. the empty graph's t!)
    are counted without enumerating them.
    """
    n = g.order
    if n > limit:
        raise LimitExceededError("graph order", n, "automorphism limit", limit)
    deg = g.degrees()
    count = 1
    for k in range(n - 1):
        orbit = 1  # k itself, via the identity
        # an automorphism fixing 0..k-1 pointwise cannot send k below k
        for w in range(k + 1, n):
            if deg[w] != deg[k]:
                continue
            if _extends_to_automorphism(g, k, w):
                orbit += 1
        count *= orbit
    return count


def _extends_to_automorphism(g: Graph, k: int, w: int) -> bool:
    """Does some automorphism fix 0..k-1 pointwise and map k to w?"""
    n = g.order
    adj = g.adj
    deg = g.degrees()
    img = list(range(k))  # img[v] = image of v, for v < len(img)
    used = (1 << k) - 1
    if used >> w & 1:
        return False  # w already taken by a pinned vertex

    # consistency of the pins themselves
    for a in range(k):
        if (adj[k] >> a & 1) != (adj[w] >> a & 1):
            return False
    img.append(w)
    used |= 1 << w

    def place(v: int, used: int) -> bool:
        if v == n:
            return True
        av = adj[v]
        for cand in range(n):
            if used >> cand & 1 or deg[cand] != deg[v]:
                continue
            ok = True
            for a in range(v):
                if (av >> a & 1) != (adj[cand] >> img[a] & 1):
                    ok = False
                    break
            if ok:
                img.append(cand)
                if place(v + 1, used | 1 << cand):
                    return True
                img.pop()
        return False

    return place(k + 1, used)


def automorphism_count_by_enumeration(g: Graph, *, limit: int = 8) -> int:
    """Oracle: count adjacency-preserving permutations by full enumeration."""
    n = g.order
    if n > limit:
        raise LimitExceededError("graph order", n, "enumeration limit", limit)
    adj = g.adj
    count = 0
    for perm in permutations(range(n)):
        ok = True
        for v in range(n):
            m = 0
            row = adj[v]
            while row:
                low = row & -row
                m |= 1 << perm[low.bit_length() - 1]
                row ^= low
            if m != adj[perm[v]]:
                ok = False
                break
        if ok:
            count += 1
    return count


def canonical_key_by_enumeration(g: Graph, *, limit: int = 8) -> CanonicalKey:
    """Oracle: canonical key as the minimum graph6 string over all relabelings."""
    n = g.order
    if n > limit:
        raise LimitExceededError("graph order", n, "enumeration limit", limit)
    best = min(to_graph6(relabel(g, perm)) for perm in permutations(range(n)))
    return CanonicalKey(best.encode("ascii"))


# ---------------------------------------------------------------------------
# census of isomorphism classes

def enumerate_nonisomorphic(order: int, *, limit: int = DEFAULT_CENSUS_LIMIT) -> list[Graph]:
    """One canonical representative per isomorphism class, deterministic order.

    Generated incrementally: every graph on t vertices arises by attaching a
    new vertex to some graph on t-1 vertices (delete any vertex and relabel),
    so extending each (t-1)-class representative by all 2^(t-1) attachment
    sets and deduplicating by canonical key is complete.  Sorted by
    (edge count, canonical key).
    """
    if order > limit:
        raise LimitExceededError("graph order", order, "census limit", limit)
    if order < 1:
        raise ValueError("order must be >= 1")
    return list(_nonisomorphic_cached(order))


@lru_cache(maxsize=32)
def _nonisomorphic_cached(order: int) -> tuple[Graph, ...]:
    if order == 1:
        return (Graph(1, (0,)),)
    seen: dict[CanonicalKey, None] = {}
    for h in _nonisomorphic_cached(order - 1):
        base_adj = list(h.adj) + [0]
        for attach in range(1 << (order - 1)):
            adj = base_adj.copy()
            adj[order - 1] = attach
            for u in range(order - 1):
                if attach >> u & 1:
                    adj[u] |= 1 << (order - 1)
            key = canonical_key(Graph(order, tuple(adj)))
            if key not in seen:
                seen[key] = None
    reps = [parse_graph6(k.graph6) for k in seen]
    reps.sort(key=lambda g: (g.edge_count, to_graph6(g)))
    return tuple(reps)
