"""Finite simple graphs on vertices 0..t-1, plus graph6 and JSON edge-list I/O.

Adjacency is stored as one bitmask int per vertex; this backs all the
combinatorial routines in the package.  Graphs are immutable and hashable
after construction, so they are safe to share across threads and to use as
dict keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EdgeListParseError, Graph6ParseError

GRAPH6_MAX_ORDER = 62  # short-form graph6 only


def _pair_index(u: int, v: int) -> int:
    """Index of the pair (u, v), u < v, in upper-triangle column order.

    The order is (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),... -- the same bit
    order graph6 uses, so edge-mask ints and graph6 bit streams agree.
    """
    return v * (v - 1) // 2 + u


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph: ``order`` vertices, bitmask adjacency.

    ``adj[v]`` has bit u set iff {u, v} is an edge.  No loops, symmetric.
    """

    order: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise ValueError(f"graph order must be >= 1, got {n}")
        if len(self.adj) != n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for order {n}")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has neighbors outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"vertex {v} has a loop")
        for v, row in enumerate(self.adj):
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list; rejects loops and out-of-range ends."""
        adj = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, tuple(adj))

    @classmethod
    def from_edge_mask(cls, order: int, mask: int) -> "Graph":
        """Build a graph from an upper-triangle edge bitmask (see _pair_index)."""
        adj = [0] * order
        for v in range(order):
            base = v * (v - 1) // 2
            for u in range(v):
                if mask >> (base + u) & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        return cls(order, tuple(adj))

    def edge_mask(self) -> int:
        """Upper-triangle edge bitmask (inverse of from_edge_mask)."""
        mask = 0
        for v in range(self.order):
            base = v * (v - 1) // 2
            row = self.adj[v] & ((1 << v) - 1)
            for u in _bits(row):
                mask |= 1 << (base + u)
        return mask

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        out = []
        for u in range(self.order):
            row = self.adj[u] >> (u + 1) << (u + 1)  # only v > u
            for v in _bits(row):
                out.append((u, v))
        out.sort()
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"


def _bits(mask: int):
    """Yield set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complement(g: Graph) -> Graph:
    """The complement graph on the same vertex set."""
    full = (1 << g.order) - 1
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabeled 0..k-1 in the given order.

    Vertices must be distinct and in range; the result keeps exactly the
    edges of g with both ends selected.
    """
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("induced_subgraph: repeated vertex")
    for v in vs:
        if not (0 <= v < g.order):
            raise ValueError(f"induced_subgraph: vertex {v} out of range")
    if not vs:
        raise ValueError("induced_subgraph: empty vertex set")
    pos = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for v in vs:
        i = pos[v]
        for u in _bits(g.adj[v]):
            j = pos.get(u)
            if j is not None:
                adj[i] |= 1 << j
    return Graph(len(vs), tuple(adj))


def relabel(g: Graph, ordering: Sequence[int]) -> Graph:
    """Relabel so old vertex ordering[i] becomes new vertex i."""
    if sorted(ordering) != list(range(g.order)):
        raise ValueError("relabel: not a permutation of the vertex set")
    return induced_subgraph(g, ordering)


# ---------------------------------------------------------------------------
# families

_FAMILY_KINDS = ("complete", "star", "path", "cycle", "empty", "matching", "one_edge")


@dataclass(frozen=True)
class FamilySpec:
    """A named parametric graph family instance.

    kind: one of complete | star | path | cycle | empty | matching | one_edge.
    ``size`` is only meaningful for matching (number of edges; the remaining
    order - 2*size vertices stay isolated).  one_edge is a single edge plus
    isolated vertices.
    """

    kind: str
    order: int
    size: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {_FAMILY_KINDS}")
        t = self.order
        if t < 1:
            raise ValueError("family order must be >= 1")
        if self.kind == "star" and t < 2:
            raise ValueError("star requires order >= 2")
        if self.kind == "cycle" and t < 3:
            raise ValueError("cycle requires order >= 3")
        if self.kind == "one_edge" and t < 2:
            raise ValueError("one_edge requires order >= 2")
        if self.kind == "matching":
            if self.size < 0:
                raise ValueError("matching size must be >= 0")
            if 2 * self.size > t:
                raise ValueError(f"matching with {self.size} edges needs order >= {2 * self.size}")
        elif self.size:
            raise ValueError(f"size is only meaningful for matching, not {self.kind}")


def family_graph(spec: FamilySpec) -> Graph:
    """Concrete graph for a family spec, on vertices 0..order-1."""
    t = spec.order
    k = spec.kind
    if k == "empty":
        edges: list[tuple[int, int]] = []
    elif k == "complete":
        edges = [(u, v) for u in range(t) for v in range(u + 1, t)]
    elif k == "star":
        edges = [(0, v) for v in range(1, t)]
    elif k == "path":
        edges = [(v, v + 1) for v in range(t - 1)]
    elif k == "cycle":
        edges = [(v, v + 1) for v in range(t - 1)] + [(0, t - 1)]
    elif k == "matching":
        edges = [(2 * j, 2 * j + 1) for j in range(spec.size)]
    elif k == "one_edge":
        edges = [(0, 1)]
    else:  # pragma: no cover - guarded by FamilySpec
        raise AssertionError(k)
    return Graph.from_edges(t, edges)


# ---------------------------------------------------------------------------
# graph6 codec (short form, order 1..62)

_G6_HEADER = ">>graph6<<"


def to_graph6(g: Graph) -> str:
    """Encode as a short-form graph6 string."""
    n = g.order
    if n > GRAPH6_MAX_ORDER:
        raise ValueError(f"graph6 short form supports order <= {GRAPH6_MAX_ORDER}, got {n}")
    out = [chr(63 + n)]
    group = 0
    nbits = 0
    for v in range(1, n):
        for u in range(v):
            group = group << 1 | (g.adj[v] >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + group))
                group = 0
                nbits = 0
    if nbits:
        group <<= 6 - nbits  # zero padding on the right
        out.append(chr(63 + group))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string; errors carry the byte offset."""
    base = 0
    if text.startswith(_G6_HEADER):
        base = len(_G6_HEADER)
        text = text[base:]
    if not text:
        raise Graph6ParseError("empty graph6 string", base)
    b0 = ord(text[0])
    if b0 == 126:
        raise Graph6ParseError("long-form graph6 (order > 62) not supported", base)
    if not 63 <= b0 <= 126:
        raise Graph6ParseError(f"order byte {b0} outside printable range 63..126", base)
    n = b0 - 63
    if n == 0:
        raise Graph6ParseError("order 0 graph not supported", base)
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(text) - 1 != ngroups:
        raise Graph6ParseError(
            f"expected {ngroups} data bytes for order {n}, got {len(text) - 1}",
            base + min(len(text), 1 + ngroups),
        )
    adj = [0] * n
    bit = 0
    u, v = 0, 1  # walks the upper triangle in column order
    for gi in range(ngroups):
        b = ord(text[1 + gi])
        if not 63 <= b <= 126:
            raise Graph6ParseError(f"data byte {b} outside printable range 63..126", base + 1 + gi)
        group = b - 63
        for k in range(5, -1, -1):
            if bit >= nbits:
                if group >> k & 1:
                    raise Graph6ParseError("nonzero padding bits", base + 1 + gi)
                continue
            if group >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            bit += 1
            u += 1
            if u == v:
                u, v = 0, v + 1
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------------------
# JSON edge-list format: {"order": t, "edges": [[u, v], ...]} with u < v

def to_edge_json(g: Graph) -> str:
    """Serialize as the auxiliary JSON edge-list format (deterministic)."""
    return json.dumps({"order": g.order, "edges": [list(e) for e in g.edges()]})


def parse_edge_json(text: str) -> Graph:
    """Parse the auxiliary JSON edge-list format with full validation."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EdgeListParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise EdgeListParseError("top level must be an object")
    extra = set(obj) - {"order", "edges"}
    if extra:
        raise EdgeListParseError(f"unexpected keys {sorted(extra)}")
    if "order" not in obj or "edges" not in obj:
        raise EdgeListParseError('both "order" and "edges" are required')
    order = obj["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise EdgeListParseError('"order" must be an integer >= 1')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise EdgeListParseError('"edges" must be a list of [u, v] pairs')
    seen = set()
    pairs: list[tuple[int, int]] = []
    for i, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise EdgeListParseError(f"edge #{i} must be a pair of integers, got {e!r}")
        u, v = e
        if u == v:
            raise EdgeListParseError(f"edge #{i} is a loop at {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise EdgeListParseError(f"edge #{i} = ({u}, {v}) out of range for order {order}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(f"edge #{i} = ({u}, {v}) repeats an earlier edge")
        seen.add(key)
        pairs.append(key)
    return Graph.from_edges(order, pairs)
