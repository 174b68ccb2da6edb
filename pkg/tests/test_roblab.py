import csv
import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import has_factor, hamilton_cycles
from spreadembed.errors import CapacityError, ParameterError
from spreadembed.hypercore import EllCycleSpec, Hypergraph, build_ell_cycle, complete_hypergraph, random_hypergraph
from spreadembed.oracle import all_f_factors
from spreadembed.roblab import (
    PropertySpec,
    SweepResult,
    contains_property,
    dirac_host,
    f_complex,
    has_perfect_matching,
    sparsify,
    threshold_sweep,
)

TRIANGLE = Hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)])


class TestSparsify:
    def test_mean_edge_count(self):
        H = complete_hypergraph(6, 3)
        rng = np.random.default_rng(0)
        counts = [len(sparsify(H, 0.5, rng)) for _ in range(4000)]
        # Binomial(20, 1/2): mean 10, standard error of the mean about 0.035
        assert np.mean(counts) == pytest.approx(10, abs=0.15)

    def test_extremes_and_subset(self):
        H = complete_hypergraph(7, 2)
        rng = np.random.default_rng(1)
        assert sparsify(H, 1.0, rng) == H
        assert len(sparsify(H, 0.0, rng)) == 0
        assert set(sparsify(H, 0.3, rng).edges) <= set(H.edges)
        with pytest.raises(ParameterError):
            sparsify(H, 1.5, rng)


class TestDecisions:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([(6, 2), (6, 3), (8, 2), (9, 3)]), st.floats(0.1, 0.7))
    def test_perfect_matching_matches_reference(self, seed, shape, p):
        n, k = shape
        H = random_hypergraph(n, k, p, np.random.default_rng(seed))
        single = Hypergraph(k, k, [tuple(range(k))])
        assert has_perfect_matching(H) == has_factor(n, H.edges, k, single.edges)

    def test_perfect_matching_divisibility_and_cap(self):
        assert not has_perfect_matching(complete_hypergraph(7, 2))
        with pytest.raises(CapacityError):
            has_perfect_matching(complete_hypergraph(42, 2))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.2, 0.8))
    def test_hamilton_property_matches_reference(self, seed, p):
        H = random_hypergraph(6, 3, p, np.random.default_rng(seed))
        assert contains_property(H, PropertySpec("hamilton_cycle", ell=1)) == bool(hamilton_cycles(6, H.edges, 3, 1))

    def test_factor_property(self):
        assert contains_property(complete_hypergraph(6, 2), PropertySpec("f_factor", F=TRIANGLE))
        assert not contains_property(build_ell_cycle(EllCycleSpec(6, 2, 1)), PropertySpec("f_factor", F=TRIANGLE))
        assert not contains_property(complete_hypergraph(7, 2), PropertySpec("f_factor", F=TRIANGLE))

    @pytest.mark.parametrize("kwargs", [dict(kind="x"), dict(kind="hamilton_cycle"), dict(kind="f_factor")])
    def test_spec_validation(self, kwargs):
        with pytest.raises(ParameterError):
            PropertySpec(**kwargs)


class TestSweep:
    def test_dirac_sweep_endpoints_and_monotone(self):
        H = dirac_host()
        res = threshold_sweep(H, PropertySpec("hamilton_cycle", ell=1), np.linspace(0, 1, 5), 30, seed=3)
        assert res.successes[0] == 0 and res.successes[-1] == 30
        assert res.monotone_violations() == []

    def test_reproducible(self):
        H = complete_hypergraph(8, 2)
        spec = PropertySpec("perfect_matching")
        a = threshold_sweep(H, spec, [0.2, 0.5], 20, seed=1)
        assert a == threshold_sweep(H, spec, [0.2, 0.5], 20, seed=1)

    def test_csv(self):
        res = SweepResult("pm", (0.0, 0.5), (4, 4), (0, 3))
        rows = list(csv.reader(io.StringIO(res.to_csv())))
        assert rows == [["p", "trials", "successes", "frequency"], ["0.0", "4", "0", "0.0"], ["0.5", "4", "3", "0.75"]]

    def test_violation_detection(self):
        res = SweepResult("pm", (0.1, 0.9), (100, 100), (90, 10))
        assert res.monotone_violations() == [(0.1, 0.9)]
        with pytest.raises(ParameterError):
            SweepResult("pm", (0.5, 0.1), (1, 1), (0, 0))


class TestFComplex:
    def test_factors_become_matchings(self):
        H = complete_hypergraph(6, 2)
        K = f_complex(H, TRIANGLE)
        assert K.k == 3 and len(K) == 20
        assert has_perfect_matching(K)

    def test_parallel_copies(self):
        # K4 holds three 4-cycles, all on the same vertex set
        C4 = Hypergraph(2, 4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        K = f_complex(complete_hypergraph(4, 2), C4)
        assert K.edges == ((0, 1, 2, 3),) * 3

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.3, 0.9))
    def test_matching_iff_factor(self, seed, p):
        H = random_hypergraph(6, 2, p, np.random.default_rng(seed))
        assert has_perfect_matching(f_complex(H, TRIANGLE)) == bool(all_f_factors(H, TRIANGLE))

    def test_rejects_disconnected_f(self):
        with pytest.raises(ParameterError):
            f_complex(complete_hypergraph(6, 2), Hypergraph(2, 4, [(0, 1), (2, 3)]))


def test_dirac_host_degrees():
    G = dirac_host()
    assert G.n == 16 and set(G.degrees().tolist()) == {8}
