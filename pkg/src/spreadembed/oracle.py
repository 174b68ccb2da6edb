"""Exact search and enumeration routines.

These are the ground truth for the statistical experiments and the
existence checks inside constant-size clusters. Every routine is exhaustive
up to a size cap; exceeding a cap raises ``CapacityError`` instead of
returning an approximation.

Randomized searches (``find_*``) explore candidates in an rng-shuffled order,
so repeated calls tend to return different solutions. The returned solution
is *not* uniform over the solution set.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DivisibilityError, ParameterError, SamplerFailure
from .hypercore import Embedding, Hypergraph, _mask, edge_components, is_path_divisible

CYCLE_ENUMERATION_CAP = 14
PATH_SEARCH_CAP = 24
BRUTE_FORCE_CAP = 9
FACTOR_CAP = 24
PARTIAL_EMBEDDING_CAP = 12
CYCLE_SUBGRAPH_CAP = 20
GRAPH_DP_CAP = 22


class SearchBudgetExceeded(SamplerFailure):
    """A backtracking search visited more nodes than its budget allows."""


# ---- ell-paths with prescribed ends --------------------------------------


@dataclass(frozen=True)
class PathQuery:
    """Request for an ``ell``-path inside ``host_vertices``.

    The path starts with the ``ell`` vertices of ``start`` (in some order)
    and, when ``end`` is given, finishes with the ``ell`` vertices of ``end``.
    Without ``required_length`` the path must use every host vertex. With
    ``ordered`` the start and end tuples are used in exactly the given order.
    """

    host_vertices: tuple[int, ...]
    k: int
    ell: int
    start: tuple[int, ...]
    end: tuple[int, ...] | None = None
    required_length: int | None = None
    ordered: bool = False

    def __post_init__(self) -> None:
        host = tuple(self.host_vertices)
        object.__setattr__(self, "host_vertices", host)
        object.__setattr__(self, "start", tuple(self.start))
        if self.end is not None:
            object.__setattr__(self, "end", tuple(self.end))
        if not 0 <= self.ell < self.k:
            raise ParameterError(f"need 0 <= ell < k, got ell={self.ell}, k={self.k}")
        hs = set(host)
        if len(hs) != len(host):
            raise ParameterError("host vertices repeat")
        if len(set(self.start)) != self.ell or not set(self.start) <= hs:
            raise ParameterError("start must be an ell-subset of the host vertices")
        if self.end is not None:
            if len(set(self.end)) != self.ell or not set(self.end) <= hs:
                raise ParameterError("end must be an ell-subset of the host vertices")
            if set(self.end) & set(self.start):
                raise ParameterError("start and end sets must be disjoint")
        if self.required_length is None:
            if not is_path_divisible(len(host), self.k, self.ell):
                raise DivisibilityError(
                    f"{len(host)} vertices cannot carry a spanning {self.ell}-path with k={self.k}"
                )
        elif self.required_length < 1:
            raise ParameterError("required_length counts edges and must be positive")

    @property
    def vertex_count(self) -> int:
        if self.required_length is None:
            return len(self.host_vertices)
        return self.required_length * (self.k - self.ell) + self.ell


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int | None):
        self.left = -1 if limit is None else limit

    def tick(self) -> None:
        if self.left == 0:
            raise SearchBudgetExceeded("backtracking node budget exhausted")
        self.left -= 1


def _grow(
    edges: frozenset[int],
    k: int,
    step: int,
    seq: list[int],
    used: int,
    order: Sequence[int],
    length: int,
    end_mask: int,
    end_len: int,
    budget: _Budget,
    end_seq: tuple[int, ...] | None = None,
) -> Iterator[list[int]]:
    """Extend ``seq`` one vertex at a time, checking each window as it closes."""
    p = len(seq)
    if p == length:
        yield seq
        return
    budget.tick()
    in_tail = p >= length - end_len
    candidates = (end_seq[p - length + end_len],) if in_tail and end_seq is not None else order
    for v in candidates:
        bit = 1 << v
        if used & bit or bool(end_mask & bit) != in_tail:
            continue
        seq.append(v)
        first = p - k + 1
        if first >= 0 and first % step == 0:
            m = 0
            for w in seq[first:]:
                m |= 1 << w
            if m not in edges:
                seq.pop()
                continue
        yield from _grow(edges, k, step, seq, used | bit, order, length, end_mask, end_len, budget, end_seq)
        seq.pop()


def _path_solutions(
    H: Hypergraph, q: PathQuery, order: Sequence[int], start_orders: Iterable[Sequence[int]], budget: _Budget
) -> Iterator[list[int]]:
    if q.k != H.k:
        raise ParameterError(f"query uniformity {q.k} differs from host uniformity {H.k}")
    step = q.k - q.ell
    length = q.vertex_count
    if length > len(q.host_vertices) or length < q.k:
        return
    end_mask = _mask(q.end) if q.end is not None else 0
    end_len = q.ell if q.end is not None else 0
    if length - q.ell < end_len:
        return
    start_mask = _mask(q.start)
    pool = [v for v in order if not start_mask >> v & 1]
    end_seq = q.end if q.ordered and q.end is not None else None
    for first in start_orders:
        seq = list(first)
        yield from _grow(H.mask_set, q.k, step, seq, start_mask, pool, length, end_mask, end_len, budget, end_seq)


def find_ell_path_with_endpoints(
    H: Hypergraph,
    q: PathQuery,
    rng: np.random.Generator,
    *,
    cap: int = PATH_SEARCH_CAP,
    node_budget: int | None = None,
) -> Embedding | None:
    """Backtracking search for the queried ``ell``-path; ``None`` if none exists.

    The returned embedding maps path position ``i`` to host vertex
    ``image[i]``. Candidates are tried in a single rng-shuffled vertex order
    and the start set is tried in rng-shuffled orders.
    """
    if len(q.host_vertices) > cap:
        raise CapacityError(f"path search on {len(q.host_vertices)} vertices exceeds cap {cap}")
    order = [q.host_vertices[i] for i in rng.permutation(len(q.host_vertices))]
    starts = [q.start] if q.ordered else list(itertools.permutations(q.start))
    if len(starts) > 1:
        starts = [starts[i] for i in rng.permutation(len(starts))]
    for sol in _path_solutions(H, q, order, starts, _Budget(node_budget)):
        return Embedding(len(sol), tuple(sol))
    return None


def all_ell_paths_with_endpoints(H: Hypergraph, q: PathQuery) -> list[tuple[int, ...]]:
    """Every vertex sequence realizing the query, by plain permutation brute force.

    Deliberately shares no code with the backtracking search so the two can
    cross-check each other.
    """
    if len(q.host_vertices) > BRUTE_FORCE_CAP:
        raise CapacityError(f"brute force on {len(q.host_vertices)} vertices exceeds cap {BRUTE_FORCE_CAP}")
    step = q.k - q.ell
    length = q.vertex_count
    if length > len(q.host_vertices) or length < q.k:
        return []
    edges = {frozenset(e) for e in H.edges}
    start_set, end_set = set(q.start), set(q.end) if q.end is not None else None
    others = [v for v in q.host_vertices if v not in start_set]
    found = []
    heads = [q.start] if q.ordered else itertools.permutations(q.start)
    for head in heads:
        for tail in itertools.permutations(others, length - q.ell):
            seq = head + tail
            if end_set is not None and q.ell and set(seq[-q.ell:]) != end_set:
                continue
            if q.ordered and q.end is not None and q.ell and seq[-q.ell:] != q.end:
                continue
            windows = (seq[i * step: i * step + q.k] for i in range((length - q.ell) // step))
            if all(frozenset(w) in edges for w in windows):
                found.append(seq)
    return sorted(found)


# ---- Hamilton ell-cycles -------------------------------------------------


def _cycle_sequences(H: Hypergraph, ell: int, order: Sequence[int], budget: _Budget) -> Iterator[list[int]]:
    """Cyclic vertex sequences realizing a Hamilton ell-cycle, vertex 0 inside the first block."""
    n, k = H.n, H.k
    step = k - ell
    edges = H.mask_set
    anchor = 0

    def wrap_ok(seq: list[int]) -> bool:
        for i in range(n // step):
            lo = i * step
            if lo + k <= n:
                continue
            m = 0
            for j in range(k):
                m |= 1 << seq[(lo + j) % n]
            if m not in edges:
                return False
        return True

    def grow(seq: list[int], used: int) -> Iterator[list[int]]:
        p = len(seq)
        if p == n:
            if wrap_ok(seq):
                yield seq
            return
        budget.tick()
        for v in order:
            bit = 1 << v
            if used & bit:
                continue
            if p < step and v != anchor and p == step - 1 and not used & 1 << anchor:
                continue
            if p >= step and v == anchor:
                continue
            seq.append(v)
            first = p - k + 1
            if first >= 0 and first % step == 0:
                m = 0
                for w in seq[first:]:
                    m |= 1 << w
                if m not in edges:
                    seq.pop()
                    continue
            yield from grow(seq, used | bit)
            seq.pop()

    yield from grow([], 0)


def _check_cycle_args(H: Hypergraph, ell: int, cap: int) -> None:
    if not 0 <= ell < H.k:
        raise ParameterError(f"need 0 <= ell < k, got ell={ell}")
    if H.n % (H.k - ell):
        raise DivisibilityError(f"k - ell = {H.k - ell} must divide n = {H.n}")
    if H.n > cap:
        raise CapacityError(f"cycle search on {H.n} vertices exceeds cap {cap}")


def all_hamilton_ell_cycles(H: Hypergraph, k: int, ell: int, *, cap: int = CYCLE_ENUMERATION_CAP) -> list[tuple[tuple[int, ...], ...]]:
    """Every Hamilton ``ell``-cycle of ``H``, each once, as a sorted tuple of edges."""
    if k != H.k:
        raise ParameterError(f"k={k} differs from host uniformity {H.k}")
    _check_cycle_args(H, ell, cap)
    if H.n <= k:
        return []
    found = set()
    step = k - ell
    for seq in _cycle_sequences(H, ell, list(range(H.n)), _Budget(None)):
        found.add(tuple(sorted({tuple(sorted(seq[(i * step + j) % H.n] for j in range(k))) for i in range(H.n // step)})))
    return sorted(found)


def find_hamilton_ell_cycle(
    H: Hypergraph, ell: int, rng: np.random.Generator | None = None, *, cap: int = PATH_SEARCH_CAP, node_budget: int | None = None
) -> tuple[int, ...] | None:
    """One cyclic vertex sequence of a Hamilton ``ell``-cycle, or ``None``."""
    _check_cycle_args(H, ell, cap)
    if H.n <= H.k:
        return None
    order = list(range(H.n)) if rng is None else [int(v) for v in rng.permutation(H.n)]
    for seq in _cycle_sequences(H, ell, order, _Budget(node_budget)):
        return tuple(seq)
    return None


def graph_is_hamiltonian(G: Hypergraph, *, cap: int = GRAPH_DP_CAP) -> bool:
    """Held-Karp subset dynamic programme for graphs, vectorized by subset size.

    ``reach[S]`` is the bitmask of vertices ``w`` such that some path starts
    at vertex 0, visits exactly ``S`` and ends at ``w``.
    """
    if G.k != 2:
        raise ParameterError("graph_is_hamiltonian expects a 2-uniform hypergraph")
    n = G.n
    if n > cap:
        raise CapacityError(f"{n} vertices exceeds the subset-DP cap {cap}")
    if n < 3:
        return False
    adj = [0] * n
    for a, b in G.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    if any(bin(a).count("1") < 2 for a in adj):
        return False
    size = 1 << n
    reach = np.zeros(size, dtype=np.int64)
    reach[1] = 1
    masks = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int64)
    for i in range(n):
        pop += (masks >> i) & 1
    with_root = masks[(masks & 1) == 1]
    root_pop = pop[with_root]
    adj_arr = np.array(adj, dtype=np.int64)
    for layer in range(2, n + 1):
        layer_masks = with_root[root_pop == layer]
        for w in range(1, n):
            sub = layer_masks[(layer_masks >> w) & 1 == 1]
            if sub.size == 0:
                continue
            prev = reach[sub ^ (1 << w)]
            hit = (prev & adj_arr[w]) != 0
            reach[sub[hit]] |= 1 << w
    return bool(reach[size - 1] & adj[0])


def has_hamilton_ell_cycle(H: Hypergraph, ell: int, *, cap: int = PATH_SEARCH_CAP) -> bool:
    """Exact decision: subset DP for graph cycles, backtracking otherwise."""
    if H.k == 2 and ell == 1 and H.n <= GRAPH_DP_CAP:
        return graph_is_hamiltonian(H)
    return find_hamilton_ell_cycle(H, ell, None, cap=cap) is not None


# ---- F-factors -------------------------------------------------------------


@dataclass(frozen=True)
class FCopy:
    """A copy of ``F`` in a host: its vertex set, its edges, and one labeling."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]
    labeling: tuple[int, ...]


def _bfs_order(F: Hypergraph) -> list[int]:
    seen: list[int] = []
    inc = F.incidence
    for root in range(F.n):
        if root in seen:
            continue
        queue = [root]
        seen.append(root)
        while queue:
            v = queue.pop(0)
            for ei in inc[v]:
                for w in F.edges[ei]:
                    if w not in seen:
                        seen.append(w)
                        queue.append(w)
    return seen


def labeled_copies(H: Hypergraph, F: Hypergraph, vertices: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Injective maps ``V(F) -> vertices`` sending every edge of ``F`` to an edge of ``H``.

    Yields the image tuple indexed by ``F``'s vertices.
    """
    if F.k != H.k:
        raise ParameterError("F and the host must have the same uniformity")
    pool = list(range(H.n)) if vertices is None else list(vertices)
    order = _bfs_order(F)
    rank = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in F.edges:
        closing[max(rank[v] for v in e)].append(e)
    edges = H.mask_set
    image = [-1] * F.n

    def place(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(image)
            return
        fv = order[i]
        for v in pool:
            if used >> v & 1:
                continue
            image[fv] = v
            ok = True
            for e in closing[i]:
                m = 0
                for w in e:
                    m |= 1 << image[w]
                if m not in edges:
                    ok = False
                    break
            if ok:
                yield from place(i + 1, used | 1 << v)
        image[fv] = -1

    yield from place(0, 0)


def f_copies(H: Hypergraph, F: Hypergraph, vertices: Sequence[int] | None = None) -> list[FCopy]:
    """Distinct copies of ``F`` (as subgraphs) inside ``vertices``, in canonical order."""
    seen: dict[tuple[tuple[int, ...], ...], FCopy] = {}
    for img in labeled_copies(H, F, vertices):
        key = tuple(sorted(tuple(sorted(img[v] for v in e)) for e in F.edges))
        if not F.edges:
            key = (tuple(sorted(img)),)
        if key not in seen:
            seen[key] = FCopy(tuple(sorted(img)), key if F.edges else (), img)
    return [seen[key] for key in sorted(seen)]


def _exact_cover(columns: Sequence[int], rows: Sequence[Sequence[int]], priority: Sequence[int] | None) -> Iterator[list[int]]:
    """Algorithm X over dict-of-sets; yields lists of row indices."""
    X: dict[int, set[int]] = {c: set() for c in columns}
    for r, cols in enumerate(rows):
        for c in cols:
            X[c].add(r)
    rank = priority if priority is not None else range(len(rows))

    def select(r: int) -> list[set[int]]:
        removed = []
        for j in rows[r]:
            for i in X[j]:
                for c in rows[i]:
                    if c != j:
                        X[c].discard(i)
            removed.append(X.pop(j))
        return removed

    def deselect(r: int, removed: list[set[int]]) -> None:
        for j in reversed(rows[r]):
            X[j] = removed.pop()
            for i in X[j]:
                for c in rows[i]:
                    if c != j:
                        X[c].add(i)

    partial: list[int] = []

    def solve() -> Iterator[list[int]]:
        if not X:
            yield list(partial)
            return
        col = min(X, key=lambda c: len(X[c]))
        for r in sorted(X[col], key=lambda i: rank[i]):
            partial.append(r)
            removed = select(r)
            yield from solve()
            deselect(r, removed)
            partial.pop()

    yield from solve()


def _factor_setup(H: Hypergraph, F: Hypergraph, vertices: Sequence[int] | None, cap: int) -> tuple[list[int], list[FCopy]]:
    verts = list(range(H.n)) if vertices is None else sorted(vertices)
    if F.n == 0:
        raise ParameterError("F must have at least one vertex")
    if len(verts) % F.n:
        raise DivisibilityError(f"|V(F)| = {F.n} does not divide {len(verts)}")
    if len(verts) > cap:
        raise CapacityError(f"factor search on {len(verts)} vertices exceeds cap {cap}")
    return verts, f_copies(H, F, verts)


def all_f_factors(H: Hypergraph, F: Hypergraph, vertices: Sequence[int] | None = None, *, cap: int = FACTOR_CAP) -> list[tuple[FCopy, ...]]:
    """Every ``F``-factor of ``H`` (restricted to ``vertices``), each a sorted tuple of copies."""
    verts, copies = _factor_setup(H, F, vertices, cap)
    sols = [tuple(sorted((copies[r] for r in rows), key=lambda c: (c.vertices, c.edges)))
            for rows in _exact_cover(verts, [c.vertices for c in copies], None)]
    return sorted(sols, key=lambda s: [(c.vertices, c.edges) for c in s])


def find_f_factor(
    H: Hypergraph, F: Hypergraph, rng: np.random.Generator, vertices: Sequence[int] | None = None, *, cap: int = FACTOR_CAP
) -> list[FCopy] | None:
    """One ``F``-factor found with rng-shuffled branching, in emission order, or ``None``."""
    verts, copies = _factor_setup(H, F, vertices, cap)
    priority = rng.permutation(len(copies)).tolist() if copies else []
    for rows in _exact_cover(verts, [c.vertices for c in copies], priority):
        return [copies[r] for r in rows]
    return None


# ---- counting lemmas -----------------------------------------------------


def count_partial_embeddings(G: Hypergraph, F_sub: Hypergraph, *, cap: int = PARTIAL_EMBEDDING_CAP) -> int:
    """Number of pairs ``(X, phi)`` with ``phi: X -> V(F_sub)`` a bijection mapping
    the edge set of ``G[X]`` exactly onto the edge set of ``F_sub``.

    Equivalently, the number of injections ``V(F_sub) -> V(G)`` whose image
    induces precisely the image of ``F_sub`` (labeled induced copies).
    """
    if F_sub.k != G.k:
        raise ParameterError("F_sub and G must have the same uniformity")
    if G.n > cap:
        raise CapacityError(f"host with {G.n} vertices exceeds cap {cap}")
    if F_sub.n > G.n:
        return 0
    if F_sub.n == 0:
        return 1
    order = _bfs_order(F_sub)
    rank = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in F_sub.edges:
        closing[max(rank[v] for v in e)].append(e)
    f_edge_count = len(F_sub.edges)
    g_edges = G.mask_set
    g_masks = G.edge_masks
    image = [-1] * F_sub.n
    count = 0

    def place(i: int, used: int) -> None:
        nonlocal count
        if i == len(order):
            inside = sum(1 for m in g_masks if m & ~used == 0)
            if inside == f_edge_count:
                count += 1
            return
        fv = order[i]
        for v in range(G.n):
            if used >> v & 1:
                continue
            image[fv] = v
            ok = True
            for e in closing[i]:
                m = 0
                for w in e:
                    m |= 1 << image[w]
                if m not in g_edges:
                    ok = False
                    break
            if ok:
                place(i + 1, used | 1 << v)
        image[fv] = -1

    place(0, 0)
    return count


def cycle_subgraph_profile(edges: Sequence[Sequence[int]], *, cap: int = CYCLE_SUBGRAPH_CAP) -> Counter:
    """Histogram ``(t, c) -> count`` over all edge subsets of ``edges``.

    ``t`` is the number of chosen edges and ``c`` the number of components of
    the subgraph they span (no isolated vertices by construction).
    """
    edges = [tuple(e) for e in edges]
    if len(edges) > cap:
        raise CapacityError(f"{len(edges)} edges exceeds the subgraph enumeration cap {cap}")
    prof: Counter = Counter()
    for subset in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if subset >> i & 1]
        prof[(len(chosen), edge_components(chosen) if chosen else 0)] += 1
    return prof


def count_cycle_subgraphs(n: int, k: int, ell: int, S: Sequence[Sequence[int]], t: int, c: int) -> int:
    """Subgraphs of the ``ell``-cycle with ``t`` edges, all from ``S``, and ``c`` components."""
    from .hypercore import cycle_edges

    cycle = set(cycle_edges(n, k, ell))
    chosen = [tuple(sorted(e)) for e in S]
    if not set(chosen) <= cycle:
        raise ParameterError("S must be a subset of the cycle's edges")
    if len(chosen) > CYCLE_SUBGRAPH_CAP:
        raise CapacityError(f"|S| = {len(chosen)} exceeds cap {CYCLE_SUBGRAPH_CAP}")
    if t == 0:
        return 1 if c == 0 else 0
    return sum(1 for sub in itertools.combinations(sorted(set(chosen)), t) if edge_components(sub) == c)


def connected_edge_subsets(H: Hypergraph, *, cap: int = CYCLE_SUBGRAPH_CAP) -> Iterator[tuple[int, int]]:
    """``(vertex count, edge count)`` for every nonempty connected edge subset of ``H``."""
    if len(H.edges) > cap:
        raise CapacityError(f"{len(H.edges)} edges exceeds cap {cap}")
    masks = H.edge_masks
    for subset in range(1, 1 << len(masks)):
        chosen = [masks[i] for i in range(len(masks)) if subset >> i & 1]
        reach, rest = chosen[0], chosen[1:]
        grew = True
        while grew and rest:
            grew = False
            keep = []
            for m in rest:
                if m & reach:
                    reach |= m
                    grew = True
                else:
                    keep.append(m)
            rest = keep
        if not rest:
            yield reach.bit_count(), len(chosen)


# ---- counting-lemma audit ------------------------------------------------


@dataclass(frozen=True)
class LemmaAudit:
    """Outcome of one exhaustive bound check: instances examined and those violating the bound."""

    name: str
    checked: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations and self.checked > 0


def audit_connected_subgraphs(n: int, k: int, ell: int) -> LemmaAudit:
    """Connected subgraphs of the ``ell``-cycle with ``t`` edges span ``>= min((k-ell) t + ell, n)`` vertices."""
    from .hypercore import EllCycleSpec, build_ell_cycle

    C = build_ell_cycle(EllCycleSpec(n, k, ell))
    checked, bad = 0, []
    for v, t in connected_edge_subsets(C):
        checked += 1
        if v < min((k - ell) * t + ell, n):
            bad.append((v, t))
    return LemmaAudit("connected_subgraph_vertices", checked, tuple(bad))


def audit_subgraph_counts(n: int, k: int, ell: int) -> LemmaAudit:
    """``#{t edges from S, c components} <= C(k|S|, c) (2 * 16^k)^t`` for every ``S`` and every ``(t, c)``."""
    from .hypercore import cycle_edges

    edges = sorted(set(cycle_edges(n, k, ell)))
    if len(edges) > CYCLE_SUBGRAPH_CAP:
        raise CapacityError(f"{len(edges)} cycle edges exceed cap {CYCLE_SUBGRAPH_CAP}")
    checked, bad = 0, []
    for subset in range(1 << len(edges)):
        S = [edges[i] for i in range(len(edges)) if subset >> i & 1]
        prof = cycle_subgraph_profile(S)
        for t in range(len(S) + 1):
            for c in range(t + 1):
                count = prof.get((t, c), 0)
                checked += 1
                if count > math.comb(k * len(S), c) * (2 * 16 ** k) ** t:
                    bad.append((tuple(S), t, c, count))
    return LemmaAudit("cycle_subgraph_counts", checked, tuple(bad))


def audit_partial_embeddings(n: int, k: int, ell: int) -> LemmaAudit:
    """``count_partial_embeddings(G, F) <= n^c (k Delta(G))^(v-c)`` for every edge subset ``F`` of the cycle ``G``."""
    from .hypercore import EllCycleSpec, build_ell_cycle

    G = build_ell_cycle(EllCycleSpec(n, k, ell))
    delta = G.max_degree()
    edges = G.edges
    checked, bad = 0, []
    for subset in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if subset >> i & 1]
        verts = sorted({v for e in chosen for v in e})
        pos = {v: i for i, v in enumerate(verts)}
        F_sub = Hypergraph(k, len(verts), [tuple(pos[v] for v in e) for e in chosen])
        v, c = len(verts), edge_components(chosen) if chosen else 0
        count = count_partial_embeddings(G, F_sub)
        checked += 1
        if count > G.n ** c * (k * delta) ** (v - c):
            bad.append((tuple(chosen), v, c, count))
    return LemmaAudit("partial_embeddings", checked, tuple(bad))


def audit_counting_lemmas(n: int, k: int, ell: int) -> list[LemmaAudit]:
    return [audit_connected_subgraphs(n, k, ell), audit_subgraph_counts(n, k, ell), audit_partial_embeddings(n, k, ell)]
