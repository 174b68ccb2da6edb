import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import factor_count
from spreadembed.cluster import ClusterConfig
from spreadembed.errors import BelowThresholdWarning, DivisibilityError, EmbeddingFailure, ParameterError
from spreadembed.factorembed import FactorAssembly, embed_f_factor, factor_template
from spreadembed.hypercore import Hypergraph, complete_hypergraph, is_embedding
from spreadembed.spreadlab import canonical_edge_set, count_distinct_outputs, factor_edge_sampler

TRIANGLE = Hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)])
EDGE = Hypergraph(2, 2, [(0, 1)])
EDGE3 = Hypergraph(3, 3, [(0, 1, 2)])
TIGHT_PATH = Hypergraph(3, 4, [(0, 1, 2), (1, 2, 3)])


def quiet_factor(H, F, C, seed, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        return embed_f_factor(H, F, ClusterConfig(C=C, **kw), np.random.default_rng(seed))


def test_template_layout():
    T = factor_template(TRIANGLE, 2)
    assert T.n == 6 and set(T.edges) == {(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)}


@settings(max_examples=20, deadline=None)
@given(
    st.sampled_from([(TRIANGLE, 12, 6), (EDGE, 12, 4), (EDGE3, 18, 6), (TIGHT_PATH, 24, 8)]),
    st.integers(0, 2**32 - 1),
)
def test_output_is_factor_embedding(case, seed):
    F, n, C = case
    H = complete_hypergraph(n, F.k)
    A = quiet_factor(H, F, C, seed)
    assert is_embedding(factor_template(F, n // F.n), H, A.psi)
    assert sorted(A.psi.image) == list(range(n))
    # every block of |F| consecutive template vertices stays inside one cluster
    owner = A.partition.cluster_of()
    assert all(len({owner[v] for v in block}) == 1 for block in A.blocks())


def test_labels_follow_clusters():
    H = complete_hypergraph(18, 3)
    A = quiet_factor(H, EDGE3, 6, 0)
    assert [set(x) for x in A.labels] == [set(c) for c in A.partition.clusters]
    assert A.psi.image == tuple(v for x in A.labels for v in x)


def test_json_round_trip():
    A = quiet_factor(complete_hypergraph(12, 2), TRIANGLE, 6, 3)
    assert FactorAssembly.from_json(A.to_json()) == A


def test_small_host_reaches_every_factor():
    # two clusters of three; the random vertex order makes every split reachable
    H = complete_hypergraph(6, 2)
    sampler = factor_edge_sampler(H, TRIANGLE, ClusterConfig(C=3))
    dc = count_distinct_outputs(sampler, 400, canonical=canonical_edge_set, seed=1)
    assert dc.distinct == factor_count(6, H.edges, 3, TRIANGLE.edges) == 10


def test_argument_checks():
    with pytest.raises(DivisibilityError):
        embed_f_factor(complete_hypergraph(13, 2), EDGE, ClusterConfig(C=4))
    with pytest.raises(DivisibilityError):
        embed_f_factor(complete_hypergraph(12, 2), TRIANGLE, ClusterConfig(C=4))
    with pytest.raises(ParameterError):
        embed_f_factor(complete_hypergraph(12, 2), EDGE3)


def test_untileable_host_fails():
    # a perfect matching host has no triangles at all
    H = Hypergraph(2, 12, [(2 * i, 2 * i + 1) for i in range(6)])
    with pytest.raises(EmbeddingFailure) as info:
        quiet_factor(H, TRIANGLE, 6, 0, retry_budget=2)
    assert set(info.value.stage_failures) == {"partition", "tiling"}
