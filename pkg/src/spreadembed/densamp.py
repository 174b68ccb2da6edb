"""Randomized samplers for dense ordinary graphs.

* ``spread_perfect_matching``: keep a few random incident edges per vertex
  and return a perfect matching of that sparse random subgraph.
* ``spread_hamilton_cycle``: randomized greedy path growth with Posa
  rotations, accepted only when the endpoints of the Hamilton path are
  adjacent (rejection sampling).

Neither routine looks at vertex labels when making choices, so both are
equivariant under relabeling; on vertex-transitive inputs the output
distribution inherits the input's symmetry.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import BelowThresholdWarning, ParameterError, SamplerFailure
from .hypercore import Hypergraph


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph given by left-indexed neighbor lists over ``0..right_n-1``."""

    left_n: int
    right_n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        adj = tuple(tuple(int(v) for v in nbrs) for nbrs in self.adjacency)
        object.__setattr__(self, "adjacency", adj)
        if len(adj) != self.left_n:
            raise ParameterError(f"expected {self.left_n} neighbor lists, got {len(adj)}")
        for u, nbrs in enumerate(adj):
            if len(set(nbrs)) != len(nbrs):
                raise ParameterError(f"left vertex {u} lists a neighbor twice")
            if any(not 0 <= v < self.right_n for v in nbrs):
                raise ParameterError(f"left vertex {u} has a neighbor outside 0..{self.right_n - 1}")

    @classmethod
    def complete(cls, n: int, m: int | None = None) -> BipartiteGraph:
        m = n if m is None else m
        return cls(n, m, tuple(tuple(range(m)) for _ in range(n)))

    def right_adjacency(self) -> list[list[int]]:
        radj: list[list[int]] = [[] for _ in range(self.right_n)]
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                radj[v].append(u)
        return radj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class Matching:
    """``pairs[u]`` is the right vertex matched to left vertex ``u``."""

    pairs: tuple[int, ...]
    attempts: int = 1

    def is_perfect_in(self, B: BipartiteGraph) -> bool:
        return (
            len(self.pairs) == B.left_n == B.right_n
            and len(set(self.pairs)) == len(self.pairs)
            and all(B.has_edge(u, v) for u, v in enumerate(self.pairs))
        )


def _augmenting_matching(adj: Sequence[Sequence[int]], order: Sequence[int], right_n: int) -> list[int] | None:
    """Kuhn's augmenting-path algorithm; left vertices processed in ``order``."""
    match_right = [-1] * right_n
    match_left = [-1] * len(adj)

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in order:
        if not augment(u, [False] * right_n):
            return None
    return match_left


def spread_perfect_matching(
    B: BipartiteGraph, samples_per_vertex: int, retry_budget: int, rng: np.random.Generator
) -> Matching:
    """Perfect matching of a random sparse subgraph of ``B``.

    Each vertex on both sides draws ``samples_per_vertex`` incident edges
    uniformly with replacement. If the union of drawn edges has a perfect
    matching one is returned, otherwise everything is redrawn, at most
    ``retry_budget`` times.

    Raises
    ------
    ParameterError
        If the sides differ in size or ``samples_per_vertex < 1``.
    SamplerFailure
        If a vertex is isolated or the budget runs out.
    """
    n = B.left_n
    if B.right_n != n:
        raise ParameterError(f"unbalanced bipartite graph: {B.left_n} vs {B.right_n}")
    if samples_per_vertex < 1:
        raise ParameterError("samples_per_vertex must be positive")
    if n == 0:
        return Matching((), 0)
    radj = B.right_adjacency()
    ldeg = np.array([len(a) for a in B.adjacency])
    rdeg = np.array([len(a) for a in radj])
    if ldeg.min() == 0 or rdeg.min() == 0:
        raise SamplerFailure("a vertex has no neighbors, so no perfect matching exists")
    if min(ldeg.min(), rdeg.min()) < math.ceil(3 * n / 4):
        warnings.warn(
            f"bipartite minimum degree {min(ldeg.min(), rdeg.min())} is below 3n/4 = {3 * n / 4:.1f}",
            BelowThresholdWarning,
            stacklevel=2,
        )
    for attempt in range(1, retry_budget + 1):
        lpick = (rng.random((n, samples_per_vertex)) * ldeg[:, None]).astype(np.int64).tolist()
        rpick = (rng.random((n, samples_per_vertex)) * rdeg[:, None]).astype(np.int64).tolist()
        priority = rng.random(n).tolist()
        sparse: list[set[int]] = [set() for _ in range(n)]
        for u in range(n):
            nbrs = B.adjacency[u]
            sparse[u].update(nbrs[i] for i in lpick[u])
        for v in range(n):
            nbrs = radj[v]
            for i in rpick[v]:
                sparse[nbrs[i]].add(v)
        adj = [sorted(s, key=priority.__getitem__) for s in sparse]
        order = rng.permutation(n).tolist()
        found = _augmenting_matching(adj, order, n)
        if found is not None:
            return Matching(tuple(found), attempt)
    raise SamplerFailure(f"no perfect matching in {retry_budget} sampled subgraphs")


def _graph_adjacency(G: Hypergraph) -> list[list[int]]:
    if G.k != 2:
        raise ParameterError("expected a graph (2-uniform hypergraph)")
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for a, b in G.edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def is_hamilton_cycle(G: Hypergraph, order: Sequence[int]) -> bool:
    n = G.n
    if sorted(order) != list(range(n)):
        return False
    if n <= 2:
        return n < 2 or G.has_edge(order)
    return all(G.has_edge((order[i], order[(i + 1) % n])) for i in range(n))


def spread_hamilton_cycle(
    G: Hypergraph, retry_budget: int = 100, rng: np.random.Generator | None = None, *, rotation_limit: int | None = None
) -> tuple[int, ...]:
    """Random Hamilton cycle of a dense graph, as a cyclic vertex order.

    A Hamilton path is grown from a uniform start by moving to a uniform
    unvisited neighbor; when stuck, a Posa rotation at a uniform eligible
    pivot creates a new endpoint. After ``rotation_limit`` rotations (default
    ``10 n``) the attempt is abandoned. A finished path is accepted only if
    its endpoints are adjacent.

    Raises
    ------
    SamplerFailure
        If no attempt within ``retry_budget`` produces a cycle.
    """
    if rng is None:
        rng = np.random.default_rng()
    n = G.n
    if n == 0:
        raise ParameterError("graph has no vertices")
    adj = _graph_adjacency(G)
    if n == 1:
        return (0,)
    if n == 2:
        if not G.edges:
            raise SamplerFailure("two isolated vertices have no Hamilton cycle")
        return (0, 1) if rng.random() < 0.5 else (1, 0)
    mindeg = min(len(a) for a in adj)
    if mindeg < 3 * n / 4:
        warnings.warn(f"minimum degree {mindeg} is below 3n/4 = {3 * n / 4:.1f}", BelowThresholdWarning, stacklevel=2)
    if mindeg < 2:
        raise SamplerFailure("a vertex of degree < 2 rules out a Hamilton cycle")
    adjmask = [sum(1 << w for w in a) for a in adj]
    limit = 10 * n if rotation_limit is None else rotation_limit
    for _ in range(retry_budget):
        start = int(rng.integers(n))
        path = [start]
        visited = 1 << start
        rotations = 0
        while len(path) < n:
            end = path[-1]
            fresh = [w for w in adj[end] if not visited >> w & 1]
            if fresh:
                w = fresh[int(rng.integers(len(fresh)))] if len(fresh) > 1 else fresh[0]
                path.append(w)
                visited |= 1 << w
                continue
            if rotations >= limit:
                break
            pivots = [i for i in range(len(path) - 2) if adjmask[end] >> path[i] & 1]
            if not pivots:
                break
            i = pivots[int(rng.integers(len(pivots)))]
            path[i + 1:] = path[:i:-1]
            rotations += 1
        if len(path) == n and adjmask[path[0]] >> path[-1] & 1:
            return tuple(path)
    raise SamplerFailure(f"no Hamilton cycle accepted within {retry_budget} attempts")
