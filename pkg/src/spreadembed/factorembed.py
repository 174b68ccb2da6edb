"""Random embedding of an ``F``-factor into a dense ``k``-graph.

The host is clustered, each cluster is tiled by copies of ``F`` found with a
randomized exact-cover search, and the tiles are read off cluster by cluster:
template vertex ``i`` (block ``i // |F|``, slot ``i % |F|``) goes to the
``i``-th labeled vertex in the concatenation of the clusters' tile sequences.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cluster import ClusterConfig, ClusterPartition, host_below_threshold, sample_cluster_partition
from .errors import BelowThresholdWarning, DivisibilityError, EmbeddingFailure, ParameterError, PipelineFailure
from .hypercore import Embedding, Hypergraph, disjoint_union, is_embedding
from .oracle import find_f_factor, labeled_copies


@dataclass(frozen=True)
class FactorAssembly:
    """One run's output.

    ``labels[x]`` is the vertex sequence of cluster ``x``: consecutive runs of
    ``|F|`` vertices are the images of ``F``'s vertices ``0..|F|-1``.
    """

    partition: ClusterPartition
    f_size: int
    labels: tuple[tuple[int, ...], ...]
    psi: Embedding
    info: dict = field(default_factory=dict, compare=False)

    def blocks(self) -> list[tuple[int, ...]]:
        b = self.f_size
        img = self.psi.image
        return [img[i: i + b] for i in range(0, len(img), b)]

    def to_json(self) -> str:
        rec = {
            "n": self.psi.target_n,
            "f_size": self.f_size,
            "partition": json.loads(self.partition.to_json()),
            "labels": [list(x) for x in self.labels],
            "psi": list(self.psi.image),
        }
        return json.dumps(rec, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FactorAssembly:
        rec = json.loads(text)
        return cls(
            ClusterPartition.from_json(json.dumps(rec["partition"])),
            rec["f_size"],
            tuple(tuple(x) for x in rec["labels"]),
            Embedding(rec["n"], tuple(rec["psi"])),
        )


@functools.lru_cache(maxsize=32)
def factor_template(F: Hypergraph, copies: int) -> Hypergraph:
    """Disjoint union of ``copies`` copies of ``F``; copy ``j`` occupies ``[j|F|, (j+1)|F|)``."""
    return disjoint_union(*([F] * copies))


def _tile_cluster(H: Hypergraph, F: Hypergraph, cluster, rng: np.random.Generator) -> list[int] | None:
    tiles = find_f_factor(H, F, rng, cluster)
    if tiles is None:
        return None
    seq: list[int] = []
    for i in rng.permutation(len(tiles)).tolist():
        options = list(labeled_copies(H, F, tiles[i].vertices))
        seq.extend(options[int(rng.integers(len(options)))])
    return seq


def embed_f_factor(
    H: Hypergraph,
    F: Hypergraph,
    cfg: ClusterConfig | None = None,
    rng: np.random.Generator | None = None,
    *,
    stage_retries: int = 3,
    warn: bool = True,
) -> FactorAssembly:
    """Sample a random ``F``-factor embedding into ``H``.

    Clustering runs with ``t = 1`` and ``eps = 1``. Each cluster is tiled
    independently; a cluster that cannot be tiled is retried
    ``stage_retries`` times before the partition is resampled.

    Raises
    ------
    DivisibilityError
        If ``|V(F)|`` divides neither ``n`` nor ``C``.
    EmbeddingFailure
        With per-stage failure counts when the budget runs out.
    """
    if F.k != H.k:
        raise ParameterError(f"F is {F.k}-uniform but the host is {H.k}-uniform")
    b = F.n
    if b == 0:
        raise ParameterError("F must have at least one vertex")
    cfg = dataclasses.replace(cfg or ClusterConfig(), t=1, eps=1.0)
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    if H.n % b:
        raise DivisibilityError(f"|V(F)| = {b} does not divide n = {H.n}")
    if cfg.C % b:
        raise DivisibilityError(f"|V(F)| = {b} does not divide C = {cfg.C}")
    if warn and host_below_threshold(H, cfg):
        warnings.warn("host minimum degree is below (delta + alpha) of the maximum", BelowThresholdWarning, stacklevel=2)
    template = factor_template(F, H.n // b)
    failures = {"partition": 0, "tiling": 0}
    for attempt in range(1, cfg.retry_budget + 1):
        try:
            P = sample_cluster_partition(H, cfg, rng, warn=False)
        except PipelineFailure:
            failures["partition"] += 1
            continue
        labels = []
        for U in P.clusters:
            seq = None
            for _ in range(stage_retries):
                seq = _tile_cluster(H, F, U, rng)
                if seq is not None:
                    break
                failures["tiling"] += 1
            if seq is None:
                break
            labels.append(tuple(seq))
        if len(labels) < P.m:
            continue
        psi = Embedding(H.n, tuple(v for seq in labels for v in seq))
        if not is_embedding(template, H, psi):
            raise AssertionError("assembled map is not an embedding of the F-factor")
        return FactorAssembly(P, b, tuple(labels), psi, {"attempts": attempt, "failures": dict(failures)})
    raise EmbeddingFailure(f"no F-factor embedding in {cfg.retry_budget} attempts", failures)
