import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadembed.cluster import (
    ClusterConfig,
    ClusterPartition,
    classify_clusters,
    host_below_threshold,
    mutual_connector_test,
    sample_cluster_partition,
    validate_partition,
    window_layout,
    window_partition,
)
from spreadembed.errors import BelowThresholdWarning, ClassificationFailure, ParameterError, PipelineFailure
from spreadembed.hypercore import Hypergraph, complete_hypergraph, empty_hypergraph


class TestLayouts:
    @pytest.mark.parametrize(
        "n, C, mode, r, raw, dissolve, reserve",
        [
            (100, 5, "auto", 20, 21, 4, (100, 100)),
            (44, 3, "auto", 8, 19, 6, (44, 44)),
            (44, 3, "compact", 5, 20, 6, (43, 44)),
            (62, 6, "auto", 32, 7, 1, (62, 62)),
            (18, 6, "auto", 6, 3, 0, (16, 18)),
        ],
    )
    def test_worked_sizes(self, n, C, mode, r, raw, dissolve, reserve):
        lay = window_layout(n, C, mode)
        assert (lay.r, lay.raw_count, lay.dissolve, lay.reserve) == (r, raw, dissolve, reserve)

    @given(st.integers(2, 9), st.integers(0, 300), st.sampled_from(["auto", "compact"]))
    def test_accounting(self, C, extra, mode):
        n = 2 * C + extra
        lay = window_layout(n, C, mode)
        lengths = [hi - lo for lo, hi in lay.windows]
        assert lengths[0] == lay.r and all(x == C - 1 for x in lengths[1:])
        assert lay.windows[0][0] == 0 and lay.reserve[1] == n
        assert all(a[1] == b[0] for a, b in zip(lay.windows, lay.windows[1:]))
        movers = lay.dissolve * (C - 1) + (lay.reserve[1] - lay.reserve[0])
        assert movers == lay.final_count - 1  # one re-seated vertex per surviving cluster
        assert lay.r + (lay.final_count - 1) * C == n
        assert lay.final_windows()[-1][1] == n

    def test_classic_needs_room(self):
        with pytest.raises(ParameterError):
            window_layout(59, 6, "classic")
        assert window_layout(60, 6, "classic").r == 30
        with pytest.raises(ParameterError):
            window_layout(11, 6, "compact")

    def test_partition_follows_order(self):
        cfg = ClusterConfig(C=6)
        raw = window_partition(18, cfg, np.random.default_rng(0))
        assert sorted(raw.order) == list(range(18))
        assert raw.clusters[0] == raw.order[:6] and raw.reserve == raw.order[16:]
        assert raw.connector_set(1, 2) == raw.order[6:8]
        assert all(raw.order[raw.permutation[v]] == v for v in range(18))


class TestConfig:
    @pytest.mark.parametrize("kwargs", [dict(C=1), dict(t=0), dict(t=6), dict(eps=0), dict(d=0), dict(layout="x"), dict(retry_budget=0)])
    def test_validation(self, kwargs):
        with pytest.raises(ParameterError):
            ClusterConfig(**kwargs)

    def test_cutoffs(self):
        cfg = ClusterConfig(C=9, alpha=0.3, delta=0.2)
        assert cfg.degree_cutoff == pytest.approx(0.4)
        assert cfg.vertex_cutoff == pytest.approx(math.exp(-0.09 * 9 / 500))
        assert cfg.in_cutoff == pytest.approx(2 / 3)
        assert cfg.keep_cutoff == pytest.approx(0.35)
        assert ClusterConfig(bad_degree_frac=0.5).degree_cutoff == 0.5


class TestPipeline:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([(18, 3, 6), (24, 3, 6), (12, 2, 4), (20, 2, 4)]))
    def test_complete_host_partitions_validate(self, seed, shape):
        n, k, C = shape
        H = complete_hypergraph(n, k)
        cfg = ClusterConfig(C=C)
        P = sample_cluster_partition(H, cfg, np.random.default_rng(seed))
        assert validate_partition(H, P, cfg) == []
        assert P.n == n and P.m == window_layout(n, C).final_count
        # on a complete host every pair of clusters is mutually connectable
        assert all(len(Ni) == P.m - 1 for Ni in P.N)

    def test_u_and_T_come_from_positions(self):
        H = complete_hypergraph(18, 3)
        cfg = ClusterConfig(C=6, t=2)
        rng = np.random.default_rng(5)
        P = sample_cluster_partition(H, cfg, rng)
        raw = window_partition(18, cfg, np.random.default_rng(5))
        assert P.u[0] == raw.clusters[0][2]
        assert P.T[0] == tuple(sorted(raw.clusters[0][:2]))
        assert all(P.u[i] not in P.T[i] for i in range(P.m))

    def test_json_round_trip(self):
        H = complete_hypergraph(18, 3)
        P = sample_cluster_partition(H, ClusterConfig(C=6), np.random.default_rng(1))
        assert ClusterPartition.from_json(P.to_json()) == P

    def test_empty_host_fails(self):
        H = empty_hypergraph(18, 3)
        with pytest.warns(BelowThresholdWarning), pytest.raises(PipelineFailure):
            sample_cluster_partition(H, ClusterConfig(C=6, retry_budget=3), np.random.default_rng(0))

    def test_threshold_check(self):
        assert not host_below_threshold(complete_hypergraph(12, 3), ClusterConfig())
        assert host_below_threshold(empty_hypergraph(12, 3), ClusterConfig())

    def test_bad_d(self):
        with pytest.raises(ParameterError):
            sample_cluster_partition(complete_hypergraph(12, 3), ClusterConfig(d=3), np.random.default_rng(0))

    def test_deterministic_under_seed(self):
        H = complete_hypergraph(24, 3)
        a = sample_cluster_partition(H, ClusterConfig(), np.random.default_rng(42))
        b = sample_cluster_partition(H, ClusterConfig(), np.random.default_rng(42))
        assert a == b


class TestClassification:
    def test_naturally_bad_beyond_quota(self):
        # edges only among vertices 0..5, so nearly every window is bad
        H = complete_hypergraph(18, 3).restrict(range(6))
        H = Hypergraph(3, 18, H.edges)
        cfg = ClusterConfig(C=6)
        raw = window_partition(18, cfg, np.random.default_rng(0))
        with pytest.raises(ClassificationFailure):
            classify_clusters(H, raw, cfg)

    def test_padding_picks_lowest_indices(self):
        H = complete_hypergraph(62, 2)
        cfg = ClusterConfig(C=6)
        raw = window_partition(62, cfg, np.random.default_rng(0))
        cls = classify_clusters(H, raw, cfg)
        assert cls.naturally_bad == () and cls.bad == (1,)
        assert cls.good == tuple(range(2, raw.layout.raw_count))

    def test_mutual_connector_test(self):
        K = complete_hypergraph(8, 2)
        # four vertices remain, each of degree 3, measured against C(5, 1)
        assert mutual_connector_test(K, (0, 1, 2, 3), 3, (4,), 1, 0.59)
        assert not mutual_connector_test(K, (0, 1, 2, 3), 3, (4,), 1, 0.61)
        star = Hypergraph(2, 8, [(0, v) for v in range(1, 8)])
        assert not mutual_connector_test(star, (0, 1, 2, 3), 3, (4,), 1, 0.3)


def test_validation_reports_problems():
    H = complete_hypergraph(12, 2)
    cfg = ClusterConfig(C=4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        P = sample_cluster_partition(H, cfg, np.random.default_rng(0))
    broken = ClusterPartition(P.clusters, P.u, P.T, tuple(() for _ in P.N), P.C, P.r, P.t)
    assert any("neighbors" in p for p in validate_partition(H, broken, cfg))
    sparse = Hypergraph(2, 12, [(0, 1)])
    assert validate_partition(sparse, P, cfg)
