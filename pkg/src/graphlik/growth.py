"""Seeded simulation of the uniform vertex-addition growth process.

The generator is sealed: SplitMix64 with the standard public constants, not
the platform RNG, so every draw is reproducible bit-for-bit across platforms
and Python versions.  Draw accounting per growth step i (i = 2..t):

  * one bounded draw for the degree k, uniform on {0..i-1};
  * k bounded draws for the neighbor set (partial Fisher-Yates).

Bounded draws use rejection, so they are exactly uniform; a rejection costs
one extra raw draw and has probability < 2^-59 for the bounds used here.

Estimation runs derive an independent stream seed per sample index, so the
hit count is independent of how the sample range is partitioned or ordered
(parallel workers chunking the range would agree with a serial run exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .canonical import CanonicalKey, canonical_key
from .errors import LimitExceededError
from .graphs import Graph

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
DEFAULT_SEED = 1
DEFAULT_TABLE_LIMIT = 5  # class-lookup tables enumerate all 2^(t(t-1)/2) outcomes


def mix64(x: int) -> int:
    """SplitMix64 output mix: a bijection of the 64-bit integers."""
    z = x & _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The sealed generator: 64-bit state, golden-ratio increment, mix output."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Exactly uniform draw from {0..n-1} (rejection, no modulo bias)."""
        if n < 1:
            raise ValueError("below() needs n >= 1")
        lim = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < lim:
                return x % n


def stream_seed(seed: int, index: int) -> int:
    """Seed of derived stream ``index``: mix64(seed + (index+1)*GOLDEN).

    The increments are distinct mod 2^64 (GOLDEN is odd) and mix64 is a
    bijection, so distinct indices always get distinct stream seeds.
    """
    if index < 0:
        raise ValueError("stream index must be >= 0")
    return mix64(seed + (index + 1) * _GOLDEN)


def uniform_subset(rng: SplitMix64, n: int, k: int) -> tuple[int, ...]:
    """Uniformly random k-subset of {0..n-1}, as a sorted tuple.

    Partial Fisher-Yates: k draws, each bounded by the remaining pool size.
    Every ordered k-selection is equally likely, so every k-subset has
    probability exactly 1/C(n, k).
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    pool = list(range(n))
    for j in range(k):
        r = j + rng.below(n - j)
        pool[j], pool[r] = pool[r], pool[j]
    return tuple(sorted(pool[:k]))


@dataclass(frozen=True)
class GrowthStep:
    """One step of a growth run: the drawn degree and the chosen neighbors."""

    degree: int
    neighbors: tuple[int, ...]


@dataclass(frozen=True)
class GrowthTrace:
    """Full record of one growth run; step 1 is always (0, ())."""

    steps: tuple[GrowthStep, ...]


def grow(t: int, seed: int = DEFAULT_SEED) -> tuple[Graph, GrowthTrace]:
    """Run the process for t steps with the sealed RNG; returns graph + trace."""
    if t < 1:
        raise ValueError("t must be >= 1")
    rng = SplitMix64(seed)
    steps = [GrowthStep(0, ())]
    adj = [0]
    for i in range(2, t + 1):
        k = rng.below(i)
        nbrs = uniform_subset(rng, i - 1, k)
        v = i - 1
        adj.append(0)
        for u in nbrs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        steps.append(GrowthStep(k, nbrs))
    return Graph(t, tuple(adj)), GrowthTrace(tuple(steps))


def graph_from_trace(trace: GrowthTrace) -> Graph:
    """Rebuild the grown graph from its trace."""
    t = len(trace.steps)
    edges = []
    for i, step in enumerate(trace.steps):
        if step.degree != len(step.neighbors):
            raise ValueError(f"step {i + 1}: degree {step.degree} but {len(step.neighbors)} neighbors")
        for u in step.neighbors:
            if not 0 <= u < i:
                raise ValueError(f"step {i + 1}: neighbor {u} not an existing vertex")
            edges.append((u, i))
    return Graph.from_edges(t, edges)


def _grow_edge_mask(t: int, rng: SplitMix64, pool: list[int]) -> int:
    """Grow once, returning only the upper-triangle edge mask (hot path)."""
    mask = 0
    for i in range(2, t + 1):
        n = i - 1
        k = rng.below(i)
        if not k:
            continue
        base = n * (n - 1) // 2
        for j in range(n):
            pool[j] = j
        for j in range(k):
            r = j + rng.below(n - j)
            pool[j], pool[r] = pool[r], pool[j]
            mask |= 1 << (base + pool[j])
    return mask


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate of a likelihood."""

    target: Graph
    samples: int
    seed: int
    hits: int

    @property
    def p_hat(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def stderr(self) -> float:
        p = self.p_hat
        return sqrt(float(p * (1 - p) / self.samples))


def estimate_likelihood(
    target: Graph, samples: int, seed: int = DEFAULT_SEED, *, offset: int = 0
) -> Estimate:
    """Estimate L(target) by sampling the process ``samples`` times.

    Sample j uses the derived stream seed stream_seed(seed, offset + j), so
    splitting [0, samples) into chunks with matching offsets reproduces a
    single serial run hit-for-hit.  Isomorphism hits are counted by canonical
    key (target key computed once; grown graphs are pre-filtered by edge
    count and degree multiset before canonicalizing, with a mask memo).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    t = target.order
    tkey = canonical_key(target)
    tedges = target.edge_count
    tdegs = sorted(target.degrees())
    memo: dict[int, bool] = {}
    pool = list(range(max(t - 1, 1)))
    hits = 0
    for j in range(samples):
        rng = SplitMix64(stream_seed(seed, offset + j))
        mask = _grow_edge_mask(t, rng, pool)
        hit = memo.get(mask)
        if hit is None:
            if mask.bit_count() != tedges:
                hit = False
            else:
                g = Graph.from_edge_mask(t, mask)
                hit = sorted(g.degrees()) == tdegs and canonical_key(g) == tkey
            memo[mask] = hit
        if hit:
            hits += 1
    return Estimate(target, samples, seed, hits)


def class_table(t: int, *, limit: int = DEFAULT_TABLE_LIMIT) -> dict[int, CanonicalKey]:
    """Edge mask -> canonical key for every labeled graph on t vertices."""
    if t > limit:
        raise LimitExceededError("graph order", t, "class table limit", limit)
    npairs = t * (t - 1) // 2
    return {mask: canonical_key(Graph.from_edge_mask(t, mask)) for mask in range(1 << npairs)}


def empirical_distribution(
    t: int, samples: int, seed: int = DEFAULT_SEED, *, offset: int = 0,
    limit: int = DEFAULT_TABLE_LIMIT,
) -> dict[CanonicalKey, int]:
    """Hit counts per isomorphism class over ``samples`` growth runs.

    Uses a precomputed mask -> class table, so it is restricted to small t;
    the sampling and stream derivation match estimate_likelihood exactly.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    table = class_table(t, limit=limit)
    counts: dict[int, int] = {}
    pool = list(range(max(t - 1, 1)))
    for j in range(samples):
        rng = SplitMix64(stream_seed(seed, offset + j))
        mask = _grow_edge_mask(t, rng, pool)
        counts[mask] = counts.get(mask, 0) + 1
    out: dict[CanonicalKey, int] = {}
    for mask, c in counts.items():
        key = table[mask]
        out[key] = out.get(key, 0) + c
    return out
