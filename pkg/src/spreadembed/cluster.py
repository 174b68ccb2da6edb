"""Random clustering of a dense hypergraph into constant-size clusters.

Pipeline: a uniformly random vertex order is cut into position windows
(``window_partition``), the resulting raw clusters are screened for low
degree (``classify_clusters``), a prescribed number of them is dissolved and
their vertices are re-seated one per surviving cluster through a random
perfect matching (``redistribute``). ``sample_cluster_partition`` runs the
whole thing with rejection resampling until the output passes
``validate_partition``.

Layouts
-------
With cluster size ``C`` the first window has length ``r`` and the others
length ``C - 1``; every surviving non-exceptional cluster later receives one
re-seated vertex and ends with exactly ``C`` vertices. Re-seated vertices
come from dissolved clusters and, when the window lengths do not divide
evenly, from a trailing *reserve* window.

* ``classic``: ``r = C(C-1) + (n mod C(C-1))``; no reserve window. Needs
  ``n >= 2 C (C-1)``.
* ``compact``: ``r = C + (n mod C)``; the reserve absorbs the remainder.
  Works down to ``n >= 2C`` and is what small experiments use.
* ``auto``: ``classic`` when it fits, else ``compact``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .densamp import BipartiteGraph, spread_perfect_matching
from .errors import (
    BelowThresholdWarning,
    ClassificationFailure,
    ParameterError,
    PipelineFailure,
    RedistributionFailure,
    SamplerFailure,
)
from .hypercore import Hypergraph, min_d_degree

LAYOUTS = ("auto", "classic", "compact")


@dataclass(frozen=True)
class ClusterConfig:
    """Tunables of the clustering pipeline.

    ``bad_degree_frac``, ``bad_vertex_frac`` and ``bad_in_frac`` override the
    three screening cutoffs; ``None`` means the default formula.
    """

    C: int = 6
    t: int = 1
    eps: float = 0.2
    alpha: float = 0.1
    delta: float = 0.2
    d: int = 1
    bad_degree_frac: float | None = None
    bad_vertex_frac: float | None = None
    bad_in_frac: float | None = None
    matching_samples: int = 5
    matching_retries: int = 20
    retry_budget: int = 50
    layout: str = "auto"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.C < 2:
            raise ParameterError(f"cluster size must be at least 2, got {self.C}")
        if not 1 <= self.t <= self.C - 1:
            raise ParameterError(f"connector size t must lie in [1, C-1] = [1, {self.C - 1}], got {self.t}")
        if not 0 < self.eps <= 1:
            raise ParameterError(f"eps must lie in (0, 1], got {self.eps}")
        if self.d < 1:
            raise ParameterError(f"d must be positive, got {self.d}")
        if self.layout not in LAYOUTS:
            raise ParameterError(f"layout must be one of {LAYOUTS}, got {self.layout!r}")
        if self.retry_budget < 1:
            raise ParameterError("retry_budget must be positive")

    @property
    def degree_cutoff(self) -> float:
        return self.delta + 2 * self.alpha / 3 if self.bad_degree_frac is None else self.bad_degree_frac

    @property
    def vertex_cutoff(self) -> float:
        if self.bad_vertex_frac is not None:
            return self.bad_vertex_frac
        return math.exp(-self.alpha ** 2 * self.C / 500)

    @property
    def in_cutoff(self) -> float:
        return 1 - 1 / math.sqrt(self.C) if self.bad_in_frac is None else self.bad_in_frac

    @property
    def keep_cutoff(self) -> float:
        """Degree fraction guaranteed for final clusters and connector unions."""
        return self.delta + self.alpha / 2


@dataclass(frozen=True)
class WindowLayout:
    """Position windows ``[lo, hi)``: ``windows[0]`` has length ``r``, the rest ``C - 1``.

    ``reserve`` is a trailing window whose vertices are only ever re-seated;
    ``dissolve`` is how many non-exceptional raw clusters must be dissolved.
    """

    n: int
    C: int
    r: int
    windows: tuple[tuple[int, int], ...]
    reserve: tuple[int, int]
    dissolve: int

    @property
    def raw_count(self) -> int:
        return len(self.windows)

    @property
    def final_count(self) -> int:
        return self.raw_count - self.dissolve

    def final_windows(self) -> list[tuple[int, int]]:
        """Windows of the final clusters in template order: ``[0, r)`` then blocks of ``C``."""
        out = [(0, self.r)]
        for i in range(self.final_count - 1):
            out.append((self.r + i * self.C, self.r + (i + 1) * self.C))
        return out


def window_layout(n: int, C: int, mode: str = "auto") -> WindowLayout:
    if mode not in LAYOUTS:
        raise ParameterError(f"layout must be one of {LAYOUTS}, got {mode!r}")
    if C < 2:
        raise ParameterError("cluster size must be at least 2")
    span = C * (C - 1)
    classic_ok = n >= 2 * span
    if mode == "classic" and not classic_ok:
        raise ParameterError(f"classic layout needs n >= 2C(C-1) = {2 * span}, got n={n}")
    if mode == "classic" or (mode == "auto" and classic_ok):
        r = span + n % span
    else:
        if n < 2 * C:
            raise ParameterError(f"need n >= 2C = {2 * C} for at least two clusters, got n={n}")
        r = C + n % C
    survivors = (n - r) // C
    dissolve = survivors // (C - 1)
    raw = survivors + dissolve
    windows = [(0, r)] + [(r + i * (C - 1), r + (i + 1) * (C - 1)) for i in range(raw)]
    lo = r + raw * (C - 1)
    return WindowLayout(n, C, r, tuple(windows), (lo, n), dissolve)


@dataclass(frozen=True)
class RawPartition:
    """Vertex order plus the raw clusters it induces.

    ``order[p]`` is the vertex at position ``p``; ``clusters[i]`` lists the
    vertices of window ``i`` in position order.
    """

    order: tuple[int, ...]
    clusters: tuple[tuple[int, ...], ...]
    reserve: tuple[int, ...]
    layout: WindowLayout

    @property
    def permutation(self) -> tuple[int, ...]:
        """Position of each vertex."""
        pos = [0] * len(self.order)
        for p, v in enumerate(self.order):
            pos[v] = p
        return tuple(pos)

    def connector_set(self, i: int, t: int) -> tuple[int, ...]:
        """Vertices at the first ``t`` positions of window ``i``."""
        return self.clusters[i][:t]


def window_partition(n: int, cfg: ClusterConfig, rng: np.random.Generator) -> RawPartition:
    """Uniformly random vertex order cut along the configured layout."""
    lay = window_layout(n, cfg.C, cfg.layout)
    order = tuple(rng.permutation(n).tolist())
    clusters = tuple(order[lo:hi] for lo, hi in lay.windows)
    return RawPartition(order, clusters, order[lay.reserve[0]: lay.reserve[1]], lay)


@dataclass(frozen=True)
class Classification:
    good: tuple[int, ...]
    bad: tuple[int, ...]
    naturally_bad: tuple[int, ...]
    diagnostics: tuple[dict, ...]


def _meets(H: Hypergraph, verts, d: int, frac: float, size: int | None = None) -> bool:
    size = len(verts) if size is None else size
    return H.induced_min_degree(verts, d) >= frac * math.comb(size, H.k - d)


def classify_clusters(H: Hypergraph, raw: RawPartition, cfg: ClusterConfig) -> Classification:
    """Mark non-exceptional raw clusters bad and pad the bad set to the layout's quota.

    A cluster ``V`` is bad when (1) its induced minimum degree is below the
    cutoff, (2) adding a single outside vertex drops below the cutoff for at
    least ``vertex_cutoff * n`` vertices, or (3) fewer than ``in_cutoff * (m-1)``
    other raw clusters accept ``V`` as a connector target.

    Raises
    ------
    ClassificationFailure
        If more clusters are naturally bad than the layout dissolves.
    """
    d, frac, n = cfg.d, cfg.degree_cutoff, H.n
    clusters = raw.clusters
    m = len(clusters)
    tsets = [raw.connector_set(i, min(cfg.t, len(c))) for i, c in enumerate(clusters)]
    needed = math.ceil(cfg.vertex_cutoff * n)
    diags, natural = [], []
    for i in range(1, m):
        V = clusters[i]
        low_degree = not _meets(H, V, d, frac)
        failures = 0
        members = set(V)
        candidates = n - len(V)
        checked = 0
        if needed <= candidates:
            for v in range(n):
                if v in members:
                    continue
                checked += 1
                if not _meets(H, V + (v,), d, frac):
                    failures += 1
                    if failures >= needed:
                        break
                elif failures + (candidates - checked) < needed:
                    break
        many_weak = failures >= needed
        in_count = sum(1 for j in range(m) if j != i and _meets(H, V + tsets[j], d, frac))
        few_in = in_count < cfg.in_cutoff * (m - 1)
        diags.append({"cluster": i, "low_degree": low_degree, "weak_extensions": failures,
                      "in_degree": in_count, "bad": low_degree or many_weak or few_in})
        if low_degree or many_weak or few_in:
            natural.append(i)
    quota = raw.layout.dissolve
    if len(natural) > quota:
        raise ClassificationFailure(f"{len(natural)} clusters are bad but only {quota} can be dissolved")
    bad = list(natural)
    for i in range(1, m):
        if len(bad) == quota:
            break
        if i not in bad:
            bad.append(i)
    bad.sort()
    good = tuple(i for i in range(1, m) if i not in bad)
    return Classification(good, tuple(bad), tuple(natural), tuple(diags))


@dataclass(frozen=True)
class ClusterPartition:
    """Final clusters with designated vertices ``u``, connector sets ``T`` and neighbor lists ``N``.

    Cluster 0 is the exceptional one of size ``r``; all others have size ``C``.
    """

    clusters: tuple[tuple[int, ...], ...]
    u: tuple[int, ...]
    T: tuple[tuple[int, ...], ...]
    N: tuple[tuple[int, ...], ...]
    C: int
    r: int
    t: int
    info: dict = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.clusters)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.clusters)

    def cluster_of(self) -> list[int]:
        owner = [-1] * self.n
        for i, c in enumerate(self.clusters):
            for v in c:
                owner[v] = i
        return owner

    def to_json(self) -> str:
        rec = {"C": self.C, "r": self.r, "t": self.t, "clusters": self.clusters, "u": self.u, "T": self.T, "N": self.N}
        return json.dumps(rec, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> ClusterPartition:
        rec = json.loads(text)
        tup = lambda xs: tuple(tuple(x) for x in xs)  # noqa: E731
        return cls(tup(rec["clusters"]), tuple(rec["u"]), tup(rec["T"]), tup(rec["N"]), rec["C"], rec["r"], rec["t"])


def mutual_connector_test(H: Hypergraph, Ui, ui: int, Tj, d: int, frac: float) -> bool:
    """``delta_d(H[U_i + T_j - u_i]) >= frac * C(|U_i + T_j|, k-d)``."""
    joined = set(Ui) | set(Tj)
    size = len(joined)
    joined.discard(ui)
    return _meets(H, joined, d, frac, size)


def neighbor_lists(H: Hypergraph, clusters, u, T, cfg: ClusterConfig) -> tuple[tuple[int, ...], ...]:
    m = len(clusters)
    d, frac = cfg.d, cfg.keep_cutoff
    ok = [[False] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                ok[i][j] = mutual_connector_test(H, clusters[i], u[i], T[j], d, frac)
    return tuple(tuple(j for j in range(m) if j != i and ok[i][j] and ok[j][i]) for i in range(m))


def redistribute(
    H: Hypergraph, raw: RawPartition, classification: Classification, cfg: ClusterConfig, rng: np.random.Generator
) -> ClusterPartition:
    """Re-seat dissolved and reserve vertices into surviving clusters via a random perfect matching.

    Raises
    ------
    RedistributionFailure
        If the matching sampler fails.
    """
    d, frac, k = cfg.d, cfg.degree_cutoff, H.k
    good = classification.good
    movers = [v for i in classification.bad for v in raw.clusters[i]] + list(raw.reserve)
    if len(movers) != len(good):
        raise ParameterError(f"{len(movers)} vertices to re-seat but {len(good)} receiving clusters")
    cutoff = frac * math.comb(cfg.C, k - d)
    adjacency = tuple(
        tuple(j for j, i in enumerate(good) if H.induced_min_degree(raw.clusters[i] + (v,), d) >= cutoff)
        for v in movers
    )
    B = BipartiteGraph(len(movers), len(good), adjacency)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BelowThresholdWarning)
            M = spread_perfect_matching(B, cfg.matching_samples, cfg.matching_retries, rng)
    except SamplerFailure as exc:
        raise RedistributionFailure(str(exc)) from exc
    seat = [0] * len(good)
    for left, right in enumerate(M.pairs):
        seat[right] = movers[left]
    exceptional = raw.clusters[0]
    t = cfg.t
    clusters = [tuple(sorted(exceptional))]
    u = [exceptional[t]]
    T = [tuple(sorted(exceptional[:t]))]
    for slot, i in enumerate(good):
        clusters.append(tuple(sorted(raw.clusters[i] + (seat[slot],))))
        u.append(seat[slot])
        T.append(tuple(sorted(raw.clusters[i][:t])))
    N = neighbor_lists(H, clusters, u, T, cfg)
    info = {"raw_good": good, "raw_bad": classification.bad, "naturally_bad": classification.naturally_bad}
    return ClusterPartition(tuple(clusters), tuple(u), tuple(T), N, cfg.C, raw.layout.r, t, info)


def validate_partition(H: Hypergraph, P: ClusterPartition, cfg: ClusterConfig) -> list[str]:
    """Deterministic checks of sizes, degrees and neighbor lists; returns the problems found."""
    problems = []
    seen = sorted(v for c in P.clusters for v in c)
    if seen != list(range(H.n)):
        problems.append("clusters do not partition the vertex set")
    if len(P.clusters[0]) != P.r:
        problems.append(f"exceptional cluster has {len(P.clusters[0])} vertices, expected {P.r}")
    for i, U in enumerate(P.clusters):
        if i and len(U) != P.C:
            problems.append(f"cluster {i} has {len(U)} vertices, expected {P.C}")
        if P.u[i] not in U:
            problems.append(f"designated vertex of cluster {i} lies outside it")
        if len(P.T[i]) != P.t or not set(P.T[i]) <= set(U) - {P.u[i]}:
            problems.append(f"connector set of cluster {i} is malformed")
        if not _meets(H, U, cfg.d, cfg.keep_cutoff):
            problems.append(f"cluster {i} falls below the degree floor")
    need = (1 - cfg.eps) * (P.m - 1)
    for i, Ni in enumerate(P.N):
        if len(Ni) < need:
            problems.append(f"cluster {i} has {len(Ni)} neighbors, fewer than {need:.2f}")
        for j in Ni:
            if i not in P.N[j]:
                problems.append(f"neighbor lists of {i} and {j} are not symmetric")
            if not (mutual_connector_test(H, P.clusters[i], P.u[i], P.T[j], cfg.d, cfg.keep_cutoff)
                    and mutual_connector_test(H, P.clusters[j], P.u[j], P.T[i], cfg.d, cfg.keep_cutoff)):
                problems.append(f"clusters {i} and {j} fail the connector degree test")
    return problems


def host_below_threshold(H: Hypergraph, cfg: ClusterConfig) -> bool:
    d = cfg.d
    return min_d_degree(H, d) < (cfg.delta + cfg.alpha) * math.comb(H.n - d, H.k - d)


def sample_cluster_partition(
    H: Hypergraph, cfg: ClusterConfig, rng: np.random.Generator, *, warn: bool = True
) -> ClusterPartition:
    """Window partition, classification and redistribution, resampled until valid.

    Raises
    ------
    PipelineFailure
        If ``cfg.retry_budget`` attempts all fail.
    """
    if not 1 <= cfg.d <= H.k - 1:
        raise ParameterError(f"d must lie in [1, {H.k - 1}], got {cfg.d}")
    if warn and host_below_threshold(H, cfg):
        warnings.warn("host minimum degree is below (delta + alpha) of the maximum", BelowThresholdWarning, stacklevel=2)
    counts = {"classification": 0, "redistribution": 0, "validation": 0}
    for attempt in range(1, cfg.retry_budget + 1):
        raw = window_partition(H.n, cfg, rng)
        try:
            cls = classify_clusters(H, raw, cfg)
        except ClassificationFailure:
            counts["classification"] += 1
            continue
        try:
            P = redistribute(H, raw, cls, cfg, rng)
        except RedistributionFailure:
            counts["redistribution"] += 1
            continue
        if validate_partition(H, P, cfg):
            counts["validation"] += 1
            continue
        P.info["attempts"] = attempt
        return P
    raise PipelineFailure(f"no valid partition in {cfg.retry_budget} attempts: {counts}")
