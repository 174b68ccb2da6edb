"""How evenly does the cycle sampler spread vertices?

Compares the clustering pipeline on the complete 3-graph with the ideal
uniform bijection, using Wilson upper bounds. 20 000 runs each keeps this
under a minute; the acceptance suite uses 10^5.
"""

import numpy as np

from spreadembed import ClusterConfig, complete_hypergraph
from spreadembed.rng import stream
from spreadembed.spreadlab import (
    all_single_probes,
    cycle_sampler,
    estimate_vertex_spread,
    sample_pair_probes,
    uniform_bijection_sampler,
)

n, trials = 18, 20_000
probes = all_single_probes(n) + sample_pair_probes(n, 500, stream(3, "probes"))

samplers = {
    "uniform bijection": uniform_bijection_sampler(n),
    "cycle pipeline": cycle_sampler(complete_hypergraph(n, 3), 1, ClusterConfig(C=6)),
}
for name, sampler in samplers.items():
    rep = estimate_vertex_spread(sampler, probes, trials, seed=3, label=name, host_n=n)
    single, pair = rep.max_upper(1) * n, rep.max_upper(2) * n * n
    print(f"{name:>18}: max upper bound {single:.2f}/{n} for one assignment, {pair:.2f}/{n * n} for two")
    print(f"{'':>18}  (max frequency)^(1/s) per s: "
          + ", ".join(f"s={s}: {v * n:.2f}/{n}" for s, v in rep.normalized_maxima().items()))

print("\nA spread constant c means every s-assignment has probability at most (c/n)^s;")
print("the uniform bijection has c close to 1, and the pipeline stays within a small factor of it.")
