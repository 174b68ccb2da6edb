"""Random embedding of a Hamilton ``ell``-cycle into a dense ``k``-graph.

Steps:

1. sample a cluster partition, build the auxiliary graph on cluster indices
   and pick a random Hamilton cycle ``phi`` of it;
2. for each consecutive pair ``phi(i) -> phi(i+1)`` find a short connector
   path starting with a reserved ``ell``-subset ``T'`` of the source's
   connector set and otherwise living in the target cluster;
3. inside each cluster join the tail of the incoming connector to the
   outgoing ``T'`` by a spanning ``ell``-path through the leftover vertices.

Reading the resulting cyclic sequence from the first vertex the incoming
connector places in the exceptional cluster gives an embedding of the
left-shifted cycle ``C'``: template window ``[0, r)`` lands on the exceptional
cluster and each later block of ``C`` positions on one ordinary cluster.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .cluster import ClusterConfig, ClusterPartition, host_below_threshold, sample_cluster_partition
from .densamp import spread_hamilton_cycle
from .errors import (
    BelowThresholdWarning,
    ConnectingFailure,
    DivisibilityError,
    EmbeddingFailure,
    ParameterError,
    PipelineFailure,
    SamplerFailure,
)
from .hypercore import (
    EllCycleSpec,
    Embedding,
    Hypergraph,
    build_ell_cycle,
    f_param,
    is_embedding,
    is_path_divisible,
    path_windows,
)
from .oracle import PathQuery, SearchBudgetExceeded, find_ell_path_with_endpoints

SEARCH_NODE_BUDGET = 20000
CONNECTOR, INNER = "connector", "inner"


@dataclass(frozen=True)
class PathSegment:
    """An ``ell``-path given by its vertex order.

    ``source`` and ``target`` are cluster indices; an inner path has
    ``source == target``.
    """

    vertices: tuple[int, ...]
    k: int
    ell: int
    role: str
    source: int
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise ParameterError("path segment repeats a vertex")
        if len(self.vertices) < self.k or not is_path_divisible(len(self.vertices), self.k, self.ell):
            raise DivisibilityError(f"{len(self.vertices)} vertices do not form an {self.ell}-path")

    @property
    def edge_count(self) -> int:
        return (len(self.vertices) - self.ell) // (self.k - self.ell)

    def edges(self) -> list[tuple[int, ...]]:
        return path_windows(self.vertices, self.k, self.ell)

    def is_valid_in(self, H: Hypergraph) -> bool:
        return all(H.has_edge(e) for e in self.edges())

    def to_record(self) -> dict:
        return {"role": self.role, "source": self.source, "target": self.target, "vertices": list(self.vertices)}


def _checked_segment(H: Hypergraph, vertices, ell: int, role: str, source: int, target: int) -> PathSegment:
    seg = PathSegment(tuple(vertices), H.k, ell, role, source, target)
    if not seg.is_valid_in(H):
        raise AssertionError(f"{role} segment {seg.vertices} has a window that is not a host edge")
    return seg


@dataclass(frozen=True)
class CycleAssembly:
    """Everything produced by one successful run.

    ``connectors[i]`` joins ``phi[i]`` to ``phi[i+1]``; ``inner[i]`` is the
    in-cluster path of ``phi[i]``; ``phi[z]`` is the exceptional cluster 0.
    """

    k: int
    ell: int
    partition: ClusterPartition
    phi: tuple[int, ...]
    z: int
    connectors: tuple[PathSegment, ...]
    inner: tuple[PathSegment, ...]
    psi: Embedding
    info: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.psi.target_n

    def to_json(self) -> str:
        rec = {
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "phi": list(self.phi),
            "z": self.z,
            "partition": json.loads(self.partition.to_json()),
            "connectors": [s.to_record() for s in self.connectors],
            "inner": [s.to_record() for s in self.inner],
            "psi": list(self.psi.image),
        }
        return json.dumps(rec, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> CycleAssembly:
        rec = json.loads(text)
        k, ell = rec["k"], rec["ell"]
        seg = lambda s: PathSegment(tuple(s["vertices"]), k, ell, s["role"], s["source"], s["target"])  # noqa: E731
        return cls(
            k,
            ell,
            ClusterPartition.from_json(json.dumps(rec["partition"])),
            tuple(rec["phi"]),
            rec["z"],
            tuple(seg(s) for s in rec["connectors"]),
            tuple(seg(s) for s in rec["inner"]),
            Embedding(rec["n"], tuple(rec["psi"])),
        )


def connector_edge_count(k: int, ell: int, C: int) -> int:
    """Edges per connector: ``f(k, ell)`` capped so each cluster keeps a leftover vertex.

    The incoming connector places ``s (k - ell)`` vertices in its target,
    which must avoid the designated vertex and the reserved ``ell``-set, and
    it must reach at least ``ell`` vertices into the target.

    Raises
    ------
    ParameterError
        If no admissible ``s`` exists for this cluster size.
    """
    step = k - ell
    low = -(-ell // step)
    high = (C - 1 - ell) // step
    if high < low:
        raise ParameterError(f"cluster size C={C} leaves no room for connectors with k={k}, ell={ell}")
    return min(f_param(k, ell), high)


def cycle_connector_size(k: int, ell: int, C: int) -> int:
    """Connector-set size ``t = 10 ell k``, capped at ``C - 1``."""
    return min(10 * ell * k, C - 1)


def cycle_config(cfg: ClusterConfig, k: int, ell: int) -> ClusterConfig:
    return dataclasses.replace(cfg, t=cycle_connector_size(k, ell, cfg.C), eps=0.2)


def aux_cluster_graph(partition: ClusterPartition, eps: float = 0.2, *, warn: bool = True) -> Hypergraph:
    """Graph on cluster indices, ``i ~ j`` when either lists the other as a neighbor."""
    m = partition.m
    pairs = {(min(i, j), max(i, j)) for i, Ni in enumerate(partition.N) for j in Ni if i != j}
    G = Hypergraph(2, m, sorted(pairs))
    if warn and m > 1:
        low = int(G.degrees().min())
        if low < (1 - eps) * (m - 1):
            warnings.warn(
                f"auxiliary cluster graph has minimum degree {low} < {(1 - eps) * (m - 1):.2f}",
                BelowThresholdWarning,
                stacklevel=2,
            )
    return G


def find_connecting_path(
    H: Hypergraph,
    partition: ClusterPartition,
    from_idx: int,
    to_idx: int,
    forbidden: Sequence[int] | set[int],
    rng: np.random.Generator,
    *,
    ell: int,
    start: Sequence[int] | None = None,
    edges: int | None = None,
    node_budget: int | None = SEARCH_NODE_BUDGET,
) -> PathSegment:
    """An ``ell``-path from an ``ell``-subset of ``T[from_idx]`` into ``U[to_idx]``.

    The first ``ell`` vertices are ``start`` (or a random ``ell``-subset of
    the unforbidden part of ``T[from_idx]``); all other vertices lie in
    ``U[to_idx]`` minus ``forbidden`` and minus ``u[to_idx]``. ``edges``
    defaults to ``f(k, ell)``.

    Raises
    ------
    ConnectingFailure
        If there is not enough room or the search finds nothing.
    """
    k = H.k
    banned = set(forbidden)
    if edges is None:
        edges = f_param(k, ell)
    if start is None:
        pool = [v for v in partition.T[from_idx] if v not in banned]
        if len(pool) < ell:
            raise ConnectingFailure(f"only {len(pool)} usable connector vertices in cluster {from_idx}")
        start = tuple(pool[i] for i in rng.choice(len(pool), ell, replace=False))
    start = tuple(start)
    if not set(start) <= set(partition.T[from_idx]):
        raise ParameterError("start must lie in the source connector set")
    banned.add(partition.u[to_idx])
    room = [v for v in partition.clusters[to_idx] if v not in banned and v not in start]
    need = edges * (k - ell)
    if len(room) < need:
        raise ConnectingFailure(f"cluster {to_idx} has {len(room)} free vertices, connector needs {need}")
    q = PathQuery(start + tuple(room), k, ell, start, required_length=edges)
    try:
        found = find_ell_path_with_endpoints(H, q, rng, cap=len(q.host_vertices), node_budget=node_budget)
    except SearchBudgetExceeded as exc:
        raise ConnectingFailure(str(exc)) from exc
    if found is None:
        raise ConnectingFailure(f"no connector from cluster {from_idx} into cluster {to_idx}")
    return _checked_segment(H, found.image, ell, CONNECTOR, from_idx, to_idx)


def _connect_all(H, P, phi, reserved, ell, s, rng) -> list[PathSegment]:
    m = len(phi)
    used: set[int] = set()
    blocked = set(P.u)
    for r in reserved:
        blocked.update(r)
    out = []
    for i in range(m):
        a, b = phi[i], phi[(i + 1) % m]
        forbidden = (blocked | used) - set(reserved[a])
        seg = find_connecting_path(H, P, a, b, forbidden, rng, ell=ell, start=reserved[a], edges=s)
        used.update(seg.vertices[ell:])
        out.append(seg)
    return out


def _inner_paths(H, P, phi, connectors, ell, rng) -> list[PathSegment]:
    m = len(phi)
    out = []
    for i in range(m):
        b = phi[i]
        incoming, outgoing = connectors[(i - 1) % m], connectors[i]
        head = incoming.vertices[-ell:]
        tail = outgoing.vertices[:ell]
        taken = set(incoming.vertices[ell:]) | set(tail)
        middle = [v for v in P.clusters[b] if v not in taken]
        host = head + tuple(middle) + tail
        if not is_path_divisible(len(host), H.k, ell):
            raise AssertionError(f"leftover of cluster {b} cannot carry a spanning {ell}-path")
        q = PathQuery(host, H.k, ell, head, tail, ordered=True)
        try:
            found = find_ell_path_with_endpoints(H, q, rng, cap=len(host), node_budget=SEARCH_NODE_BUDGET)
        except SearchBudgetExceeded as exc:
            raise ConnectingFailure(str(exc)) from exc
        if found is None:
            raise ConnectingFailure(f"no spanning path through the leftover of cluster {b}")
        out.append(_checked_segment(H, found.image, ell, INNER, b, b))
    return out


@functools.lru_cache(maxsize=64)
def shifted_cycle_template(n: int, k: int, ell: int) -> Hypergraph:
    return build_ell_cycle(EllCycleSpec(n, k, ell, shifted=True))


def assemble_psi(partition: ClusterPartition, phi, connectors, inner, ell: int) -> tuple[Embedding, int]:
    """Read the cyclic sequence starting inside the exceptional cluster; returns ``(psi, z)``."""
    m = len(phi)
    z = phi.index(0)
    image: list[int] = []
    for step in range(m):
        i = (z + step) % m
        image.extend(connectors[(i - 1) % m].vertices[ell:])
        image.extend(inner[i].vertices[ell:])
    return Embedding(len(image), tuple(image)), z


def check_assembly(H: Hypergraph, A: CycleAssembly) -> list[str]:
    """Run-level invariants: embedding validity, window bijection, connector disjointness."""
    problems = []
    P, ell, m = A.partition, A.ell, len(A.phi)
    if not is_embedding(shifted_cycle_template(A.n, H.k, ell), H, A.psi):
        problems.append("psi is not an embedding of the shifted cycle")
    img = A.psi.image
    lo = 0
    for step in range(m):
        cl = P.clusters[A.phi[(A.z + step) % m]]
        hi = lo + len(cl)
        if set(img[lo:hi]) != set(cl):
            problems.append(f"template window [{lo}, {hi}) does not map onto cluster {A.phi[(A.z + step) % m]}")
        lo = hi
    seen: set[int] = set()
    for seg in A.connectors:
        if seen & set(seg.vertices):
            problems.append("connectors overlap")
        seen.update(seg.vertices)
        src, dst = set(P.clusters[seg.source]), set(P.clusters[seg.target])
        if not set(seg.vertices[:ell]) <= set(P.T[seg.source]) & src or not set(seg.vertices[ell:]) <= dst:
            problems.append(f"connector {seg.source}->{seg.target} alternates between clusters")
        if P.u[seg.target] in seg.vertices:
            problems.append(f"connector into {seg.target} uses the designated vertex")
    return problems


def embed_hamilton_cycle(
    H: Hypergraph,
    k: int,
    ell: int,
    cfg: ClusterConfig | None = None,
    rng: np.random.Generator | None = None,
    *,
    connector_edges: int | None = None,
    stage_retries: int = 3,
    warn: bool = True,
) -> CycleAssembly:
    """Sample a random Hamilton ``ell``-cycle embedding into ``H``.

    The clustering uses ``cfg`` with ``t`` and ``eps`` set for cycles (see
    ``cycle_config``). Connector and inner-path stages are retried
    ``stage_retries`` times before the whole partition is resampled, for at
    most ``cfg.retry_budget`` partitions.

    Raises
    ------
    DivisibilityError
        If ``k - ell`` divides neither ``n`` nor ``C``.
    EmbeddingFailure
        With per-stage failure counts when the budget runs out.
    """
    if H.k != k:
        raise ParameterError(f"host is {H.k}-uniform, template asks for k={k}")
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}")
    cfg = cycle_config(cfg or ClusterConfig(), k, ell)
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    step = k - ell
    if H.n % step:
        raise DivisibilityError(f"k - ell = {step} does not divide n = {H.n}")
    if cfg.C % step:
        raise DivisibilityError(f"k - ell = {step} does not divide C = {cfg.C}")
    if cfg.t < ell:
        raise ParameterError(f"connector sets of size {cfg.t} cannot hold an {ell}-subset")
    s = connector_edge_count(k, ell, cfg.C) if connector_edges is None else connector_edges
    if warn and host_below_threshold(H, cfg):
        warnings.warn("host minimum degree is below (delta + alpha) of the maximum", BelowThresholdWarning, stacklevel=2)
    failures = {"partition": 0, "cluster_cycle": 0, "connectors": 0, "inner_paths": 0}
    for attempt in range(1, cfg.retry_budget + 1):
        try:
            P = sample_cluster_partition(H, cfg, rng, warn=False)
        except PipelineFailure:
            failures["partition"] += 1
            continue
        G = aux_cluster_graph(P, cfg.eps, warn=False)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BelowThresholdWarning)
                phi = spread_hamilton_cycle(G, rng=rng)
        except SamplerFailure:
            failures["cluster_cycle"] += 1
            continue
        reserved = [tuple(T[i] for i in rng.choice(len(T), ell, replace=False)) for T in P.T]
        connectors = inner = None
        for _ in range(stage_retries):
            try:
                connectors = _connect_all(H, P, phi, reserved, ell, s, rng)
                break
            except ConnectingFailure:
                failures["connectors"] += 1
        if connectors is None:
            continue
        for _ in range(stage_retries):
            try:
                inner = _inner_paths(H, P, phi, connectors, ell, rng)
                break
            except ConnectingFailure:
                failures["inner_paths"] += 1
        if inner is None:
            continue
        psi, z = assemble_psi(P, phi, connectors, inner, ell)
        A = CycleAssembly(k, ell, P, tuple(phi), z, tuple(connectors), tuple(inner), psi,
                          {"attempts": attempt, "failures": dict(failures), "connector_edges": s})
        problems = check_assembly(H, A)
        if problems:
            raise AssertionError("; ".join(problems))
        return A
    raise EmbeddingFailure(f"no Hamilton {ell}-cycle embedding in {cfg.retry_budget} attempts", failures)

