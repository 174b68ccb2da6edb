"""Randomized spread embeddings of Hamilton cycles and factors into dense hypergraphs."""

__version__ = "0.1.0"

from .cluster import ClusterConfig, ClusterPartition, sample_cluster_partition
from .cyclembed import CycleAssembly, embed_hamilton_cycle
from .errors import (
    BelowThresholdWarning,
    CapacityError,
    DivisibilityError,
    EmbeddingFailure,
    ParameterError,
    SamplerFailure,
    SpreadEmbedError,
)
from .factorembed import FactorAssembly, embed_f_factor
from .hypercore import EllCycleSpec, Embedding, Hypergraph, build_ell_cycle, complete_hypergraph, is_embedding

__all__ = [
    "BelowThresholdWarning",
    "CapacityError",
    "ClusterConfig",
    "ClusterPartition",
    "CycleAssembly",
    "DivisibilityError",
    "EllCycleSpec",
    "Embedding",
    "EmbeddingFailure",
    "FactorAssembly",
    "Hypergraph",
    "ParameterError",
    "SamplerFailure",
    "SpreadEmbedError",
    "build_ell_cycle",
    "complete_hypergraph",
    "embed_f_factor",
    "embed_hamilton_cycle",
    "is_embedding",
    "sample_cluster_partition",
]
