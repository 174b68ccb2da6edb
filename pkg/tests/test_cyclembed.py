import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadembed.cluster import ClusterConfig, sample_cluster_partition
from spreadembed.cyclembed import (
    CycleAssembly,
    PathSegment,
    aux_cluster_graph,
    check_assembly,
    connector_edge_count,
    cycle_config,
    cycle_connector_size,
    embed_hamilton_cycle,
    find_connecting_path,
    shifted_cycle_template,
)
from spreadembed.errors import BelowThresholdWarning, DivisibilityError, EmbeddingFailure, ParameterError
from spreadembed.hypercore import EllCycleSpec, Hypergraph, build_ell_cycle, complete_hypergraph, is_embedding

CELLS = [(2, 1, 4, 12), (3, 1, 6, 18), (3, 2, 6, 18)]


def quiet_embed(H, k, ell, C, seed, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        return embed_hamilton_cycle(H, k, ell, ClusterConfig(C=C), np.random.default_rng(seed), **kw)


class TestParameters:
    @pytest.mark.parametrize("k, ell, C, s", [(2, 1, 4, 2), (3, 1, 6, 2), (3, 2, 6, 3), (4, 1, 12, 3), (4, 2, 6, 1)])
    def test_connector_edges(self, k, ell, C, s):
        assert connector_edge_count(k, ell, C) == s

    def test_no_room(self):
        with pytest.raises(ParameterError):
            connector_edge_count(3, 2, 3)

    def test_connector_size(self):
        assert cycle_connector_size(3, 1, 6) == 5
        assert cycle_connector_size(2, 1, 200) == 20
        cfg = cycle_config(ClusterConfig(C=6, eps=0.9), 3, 2)
        assert (cfg.t, cfg.eps) == (5, 0.2)

    def test_template_is_shifted_cycle(self):
        assert shifted_cycle_template(6, 3, 1) == build_ell_cycle(EllCycleSpec(6, 3, 1, shifted=True))


class TestEmbedding:
    @pytest.mark.parametrize("k, ell, C, n", CELLS)
    def test_complete_hosts(self, k, ell, C, n):
        H = complete_hypergraph(n, k)
        A = quiet_embed(H, k, ell, C, 0)
        assert check_assembly(H, A) == []
        assert is_embedding(shifted_cycle_template(n, k, ell), H, A.psi)
        assert sorted(A.psi.image) == list(range(n))
        assert len(A.connectors) == len(A.inner) == A.partition.m

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(CELLS), st.integers(0, 2**32 - 1))
    def test_windows_land_on_clusters(self, cell, seed):
        k, ell, C, n = cell
        H = complete_hypergraph(n, k)
        A = quiet_embed(H, k, ell, C, seed)
        P = A.partition
        img = A.psi.image
        assert set(img[: P.r]) == set(P.clusters[0])
        blocks = {frozenset(img[P.r + i * C: P.r + (i + 1) * C]) for i in range(P.m - 1)}
        assert blocks == {frozenset(c) for c in P.clusters[1:]}
        for seg in A.connectors:
            assert seg.edge_count == A.info["connector_edges"]
            assert seg.is_valid_in(H)

    def test_dense_random_host(self):
        rng = np.random.default_rng(2)
        edges = [e for e in complete_hypergraph(18, 3).edges if rng.random() < 0.9]
        H = Hypergraph(3, 18, edges)
        A = quiet_embed(H, 3, 1, 6, 4)
        assert check_assembly(H, A) == []

    def test_same_seed_same_output(self):
        H = complete_hypergraph(18, 3)
        assert quiet_embed(H, 3, 2, 6, 9).psi == quiet_embed(H, 3, 2, 6, 9).psi

    def test_json_round_trip(self):
        H = complete_hypergraph(12, 2)
        A = quiet_embed(H, 2, 1, 4, 1)
        B = CycleAssembly.from_json(A.to_json())
        assert B == A and check_assembly(H, B) == []

    def test_sparse_host_reports_failures(self):
        H = build_ell_cycle(EllCycleSpec(18, 3, 1))
        with pytest.raises(EmbeddingFailure) as info:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BelowThresholdWarning)
                embed_hamilton_cycle(H, 3, 1, ClusterConfig(C=6, retry_budget=3), np.random.default_rng(0))
        assert sum(info.value.stage_failures.values()) >= 3

    def test_argument_checks(self):
        H = complete_hypergraph(18, 3)
        with pytest.raises(DivisibilityError):
            embed_hamilton_cycle(complete_hypergraph(17, 3), 3, 1, ClusterConfig(C=6))
        with pytest.raises(DivisibilityError):
            embed_hamilton_cycle(H, 3, 1, ClusterConfig(C=5))
        with pytest.raises(ParameterError):
            embed_hamilton_cycle(H, 2, 1)
        with pytest.raises(ParameterError):
            embed_hamilton_cycle(H, 3, 3)

    def test_check_assembly_catches_tampering(self):
        H = complete_hypergraph(18, 3)
        A = quiet_embed(H, 3, 1, 6, 3)
        img = list(A.psi.image)
        img[0], img[-1] = img[-1], img[0]
        bad = CycleAssembly(A.k, A.ell, A.partition, A.phi, A.z, A.connectors, A.inner,
                            type(A.psi)(A.psi.target_n, tuple(img)))
        assert check_assembly(H, bad)


class TestPieces:
    def test_connecting_path(self):
        H = complete_hypergraph(18, 3)
        cfg = cycle_config(ClusterConfig(C=6), 3, 1)
        P = sample_cluster_partition(H, cfg, np.random.default_rng(0))
        seg = find_connecting_path(H, P, 1, 2, set(), np.random.default_rng(1), ell=1, edges=2)
        assert seg.vertices[0] in P.T[1]
        assert set(seg.vertices[1:]) <= set(P.clusters[2]) - {P.u[2]}
        assert seg.edge_count == 2

    def test_aux_graph_of_complete_host(self):
        H = complete_hypergraph(24, 3)
        P = sample_cluster_partition(H, cycle_config(ClusterConfig(C=6), 3, 1), np.random.default_rng(0))
        G = aux_cluster_graph(P)
        assert len(G.edges) == P.m * (P.m - 1) // 2

    def test_segment_validation(self):
        with pytest.raises(DivisibilityError):
            PathSegment((0, 1, 2, 3), 3, 1, "inner", 0, 0)
        with pytest.raises(ParameterError):
            PathSegment((0, 1, 1), 3, 1, "inner", 0, 0)
        seg = PathSegment((0, 1, 2, 3, 4), 3, 1, "inner", 0, 0)
        assert seg.edges() == [(0, 1, 2), (2, 3, 4)]
