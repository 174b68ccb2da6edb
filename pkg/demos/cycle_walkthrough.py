"""Follow one Hamilton loose-cycle embedding through every stage.

Run with ``python demos/cycle_walkthrough.py``. Uses a dense random
3-graph on 24 vertices so the clustering has something to reject.
"""

import warnings

import numpy as np

from spreadembed import ClusterConfig, embed_hamilton_cycle, is_embedding
from spreadembed.cyclembed import check_assembly, cycle_config, shifted_cycle_template
from spreadembed.hypercore import min_d_degree, random_hypergraph
from spreadembed.rng import stream

n, k, ell = 24, 3, 1
host = random_hypergraph(n, k, 0.92, stream(1, "host"))
print(f"host: {len(host)} edges, minimum vertex degree {min_d_degree(host, 1)} of a possible {(n - 1) * (n - 2) // 2}")

cfg = ClusterConfig(C=6)
print(f"cycle settings: connector sets of size t={cycle_config(cfg, k, ell).t}, cluster size C={cfg.C}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    A = embed_hamilton_cycle(host, k, ell, cfg, np.random.default_rng(7))

P = A.partition
print(f"\npartition accepted after {P.info['attempts']} attempt(s); layout r={P.r}, {P.m} clusters")
for i, U in enumerate(P.clusters):
    print(f"  cluster {i}: {U}  u={P.u[i]}  T={P.T[i]}  neighbors={P.N[i]}")

print(f"\ncluster cycle phi = {A.phi} (exceptional cluster at position {A.z})")
for seg in A.connectors:
    print(f"  connector {seg.source} -> {seg.target}: {seg.vertices}")
for seg in A.inner:
    print(f"  inner path in {seg.source}: {seg.vertices}")

print(f"\npsi = {A.psi.image}")
template = shifted_cycle_template(n, k, ell)
print("psi embeds the shifted cycle:", is_embedding(template, host, A.psi))
print("assembly problems:", check_assembly(host, A) or "none")
