import warnings
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadembed.densamp import BipartiteGraph, Matching, is_hamilton_cycle, spread_hamilton_cycle, spread_perfect_matching
from spreadembed.errors import BelowThresholdWarning, ParameterError, SamplerFailure
from spreadembed.hypercore import Hypergraph, complete_hypergraph
from spreadembed.roblab import dirac_host
from spreadembed.spreadlab import canonical_cycle


@st.composite
def dense_bipartite(draw):
    n = draw(st.integers(1, 12))
    need = -(-3 * n // 4)
    adj = []
    for _ in range(n):
        nbrs = draw(st.sets(st.integers(0, n - 1), min_size=need, max_size=n))
        adj.append(tuple(sorted(nbrs)))
    return BipartiteGraph(n, n, tuple(adj))


class TestPerfectMatching:
    @settings(max_examples=60, deadline=None)
    @given(dense_bipartite(), st.integers(0, 2**32 - 1))
    def test_output_is_perfect(self, B, seed):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BelowThresholdWarning)
            try:
                M = spread_perfect_matching(B, 5, 50, np.random.default_rng(seed))
            except SamplerFailure:
                # left degrees are dense but right degrees can be small; only then may it fail
                assert min(len(r) for r in B.right_adjacency()) < 3 * B.left_n / 4
                return
        assert M.is_perfect_in(B)
        assert 1 <= M.attempts <= 50

    def test_complete_graph_is_near_uniform(self):
        rng = np.random.default_rng(7)
        B = BipartiteGraph.complete(3)
        counts = Counter(spread_perfect_matching(B, 2, 20, rng).pairs for _ in range(6000))
        assert len(counts) == 6
        assert max(counts.values()) / min(counts.values()) < 1.3

    def test_errors(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ParameterError):
            spread_perfect_matching(BipartiteGraph.complete(2, 3), 2, 5, rng)
        with pytest.raises(ParameterError):
            spread_perfect_matching(BipartiteGraph.complete(2), 0, 5, rng)
        with pytest.raises(SamplerFailure):
            spread_perfect_matching(BipartiteGraph(2, 2, ((0,), (0,))), 2, 5, rng)
        with pytest.raises(ParameterError):
            BipartiteGraph(1, 2, ((0, 0),))

    def test_warns_below_three_quarters(self):
        B = BipartiteGraph(4, 4, ((0, 1), (1, 2), (2, 3), (3, 0)))
        with pytest.warns(BelowThresholdWarning):
            M = spread_perfect_matching(B, 3, 100, np.random.default_rng(1))
        assert M.is_perfect_in(B)

    def test_empty(self):
        assert spread_perfect_matching(BipartiteGraph.complete(0), 1, 1, np.random.default_rng(0)) == Matching((), 0)


class TestHamiltonCycle:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 14), st.integers(0, 2**32 - 1))
    def test_complete_graph(self, n, seed):
        K = complete_hypergraph(n, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BelowThresholdWarning)
            order = spread_hamilton_cycle(K, rng=np.random.default_rng(seed))
        assert is_hamilton_cycle(K, order)

    def test_dirac_host(self):
        G = dirac_host()
        rng = np.random.default_rng(3)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BelowThresholdWarning)
            for _ in range(20):
                assert is_hamilton_cycle(G, spread_hamilton_cycle(G, rng=rng))

    def test_k4_covers_all_three_cycles(self):
        rng = np.random.default_rng(11)
        K4 = complete_hypergraph(4, 2)
        seen = Counter(canonical_cycle(spread_hamilton_cycle(K4, rng=rng)) for _ in range(3000))
        assert len(seen) == 3
        assert min(seen.values()) > 800

    def test_failures(self):
        star = Hypergraph(2, 4, [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(SamplerFailure), pytest.warns(BelowThresholdWarning):
            spread_hamilton_cycle(star, rng=np.random.default_rng(0))
        two_triangles = Hypergraph(2, 6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        with pytest.raises(SamplerFailure), pytest.warns(BelowThresholdWarning):
            spread_hamilton_cycle(two_triangles, retry_budget=10, rng=np.random.default_rng(0))
        with pytest.raises(ParameterError):
            spread_hamilton_cycle(complete_hypergraph(4, 3))

    def test_is_hamilton_cycle(self):
        C4 = Hypergraph(2, 4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert is_hamilton_cycle(C4, (0, 1, 2, 3))
        assert not is_hamilton_cycle(C4, (0, 2, 1, 3))
        assert not is_hamilton_cycle(C4, (0, 1, 2))
