"""Random sparsification of a Dirac graph, and F-factors as perfect matchings.

Part one keeps each edge of an 8-regular graph on 16 vertices with
probability p and asks how often a Hamilton cycle survives. Part two checks
on a few random hosts that tiling by triangles is the same question as a
perfect matching in the triangle complex.
"""

import numpy as np

from spreadembed.hypercore import Hypergraph, random_hypergraph
from spreadembed.oracle import find_f_factor
from spreadembed.rng import stream
from spreadembed.roblab import PropertySpec, dirac_host, f_complex, has_perfect_matching, threshold_sweep

G = dirac_host()
res = threshold_sweep(G, PropertySpec("hamilton_cycle", ell=1), np.linspace(0, 1, 11), 60, seed=5)
print("p      Hamiltonian fraction")
for p, f in zip(res.p_grid, res.frequencies):
    print(f"{p:.1f}    {f:.3f}  {'#' * round(40 * f)}")
print("drops beyond 3 sigma:", res.monotone_violations() or "none")

triangle = Hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)])
rng = stream(5, "complex")
print("\nhost  triangle-factor  matching-in-complex")
for i in range(8):
    H = random_hypergraph(9, 2, 0.55, rng)
    print(f"{i:>4}  {str(find_f_factor(H, triangle, rng) is not None):>15}  {str(has_perfect_matching(f_complex(H, triangle))):>19}")
