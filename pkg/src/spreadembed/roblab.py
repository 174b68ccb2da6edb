"""Random sparsification experiments.

``sparsify`` keeps each edge independently; ``contains_property`` decides a
spanning property exactly; ``threshold_sweep`` estimates the success
frequency of the property in ``H_p`` over a grid of ``p``. ``f_complex``
turns ``F``-factors into perfect matchings of an auxiliary hypergraph.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ParameterError
from .hypercore import Hypergraph, circulant_graph, complement_graph, edge_components
from .oracle import FACTOR_CAP, PATH_SEARCH_CAP, f_copies, find_f_factor, has_hamilton_ell_cycle
from .rng import stream

PROPERTY_KINDS = ("hamilton_cycle", "f_factor", "perfect_matching")
MATCHING_CAP = 40


def sparsify(H: Hypergraph, p: float, rng: np.random.Generator) -> Hypergraph:
    """Keep every edge independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    keep = rng.random(len(H.edges)) < p
    return Hypergraph(H.k, H.n, [e for e, kept in zip(H.edges, keep.tolist()) if kept], H.multi)


@dataclass(frozen=True)
class PropertySpec:
    """``hamilton_cycle`` needs ``ell``; ``f_factor`` needs ``F``."""

    kind: str
    ell: int | None = None
    F: Hypergraph | None = None

    def __post_init__(self) -> None:
        if self.kind not in PROPERTY_KINDS:
            raise ParameterError(f"unknown property {self.kind!r}; expected one of {PROPERTY_KINDS}")
        if self.kind == "hamilton_cycle" and self.ell is None:
            raise ParameterError("hamilton_cycle needs ell")
        if self.kind == "f_factor" and self.F is None:
            raise ParameterError("f_factor needs F")

    @property
    def label(self) -> str:
        if self.kind == "hamilton_cycle":
            return f"hamilton_cycle(ell={self.ell})"
        if self.kind == "f_factor":
            return f"f_factor(|V(F)|={self.F.n},|E(F)|={len(self.F.edges)})"
        return self.kind


def has_perfect_matching(H: Hypergraph, *, cap: int = MATCHING_CAP) -> bool:
    """Perfect matching test by always covering the lowest uncovered vertex (memoized)."""
    n, k = H.n, H.k
    if n > cap:
        raise CapacityError(f"perfect matching search on {n} vertices exceeds cap {cap}")
    if n % k:
        return False
    if n == 0:
        return True
    by_low: list[list[int]] = [[] for _ in range(n)]
    for m in set(H.edge_masks):
        by_low[(m & -m).bit_length() - 1].append(m)
    full = (1 << n) - 1
    dead: set[int] = set()

    def cover(covered: int) -> bool:
        if covered == full:
            return True
        if covered in dead:
            return False
        free = ~covered & full
        low = (free & -free).bit_length() - 1
        for m in by_low[low]:
            if not m & covered and cover(covered | m):
                return True
        dead.add(covered)
        return False

    return cover(0)


def contains_property(H: Hypergraph, spec: PropertySpec, *, cap: int | None = None) -> bool:
    """Exact decision; raises ``CapacityError`` beyond the search cap."""
    if spec.kind == "hamilton_cycle":
        return has_hamilton_ell_cycle(H, spec.ell, cap=PATH_SEARCH_CAP if cap is None else cap)
    if spec.kind == "f_factor":
        if H.n % spec.F.n:
            return False
        return find_f_factor(H, spec.F, np.random.default_rng(0), cap=FACTOR_CAP if cap is None else cap) is not None
    return has_perfect_matching(H, cap=MATCHING_CAP if cap is None else cap)


@dataclass(frozen=True)
class SweepResult:
    property_label: str
    p_grid: tuple[float, ...]
    trials: tuple[int, ...]
    successes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.p_grid, self.p_grid[1:])):
            raise ParameterError("p grid must be strictly increasing")
        if any(s > t for s, t in zip(self.successes, self.trials)):
            raise ParameterError("more successes than trials")

    @property
    def frequencies(self) -> list[float]:
        return [s / t for s, t in zip(self.successes, self.trials)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "trials", "successes", "frequency"])
        for p, t, s, f in zip(self.p_grid, self.trials, self.successes, self.frequencies):
            w.writerow([repr(float(p)), t, s, repr(f)])
        return buf.getvalue()

    def monotone_violations(self, sigmas: float = 3.0) -> list[tuple[float, float]]:
        """Pairs ``p < p'`` whose frequency drops by more than ``sigmas`` combined standard errors."""
        out = []
        f = self.frequencies
        for i in range(len(f)):
            for j in range(i + 1, len(f)):
                se = math.sqrt(f[i] * (1 - f[i]) / self.trials[i] + f[j] * (1 - f[j]) / self.trials[j])
                if f[i] - f[j] > sigmas * se:
                    out.append((self.p_grid[i], self.p_grid[j]))
        return out


def threshold_sweep(
    H: Hypergraph,
    spec: PropertySpec,
    p_grid,
    trials_per_p: int,
    seed: int = 0,
    *,
    label: str = "sweep",
    cap: int | None = None,
) -> SweepResult:
    """Success frequency of ``spec`` in ``H_p``; trial ``j`` at grid index ``i`` uses stream ``(seed, label, i, j)``."""
    grid = tuple(float(p) for p in p_grid)
    if trials_per_p < 1:
        raise ParameterError("trials_per_p must be positive")
    successes = []
    for i, p in enumerate(grid):
        hits = 0
        for j in range(trials_per_p):
            hits += contains_property(sparsify(H, p, stream(seed, label, i, j)), spec, cap=cap)
        successes.append(hits)
    return SweepResult(spec.label, grid, (trials_per_p,) * len(grid), tuple(successes))


def f_complex(H: Hypergraph, F: Hypergraph) -> Hypergraph:
    """``|V(F)|``-uniform multi-hypergraph with one edge per copy of ``F`` in ``H``.

    Copies are distinct sub-hypergraphs; two copies on the same vertex set
    with different edge sets give two parallel edges.
    """
    covered = {v for e in F.edges for v in e}
    if F.n == 0 or (F.n > 1 and (len(covered) != F.n or edge_components(F.edges) != 1)):
        raise ParameterError("F must be connected without isolated vertices")
    return Hypergraph(F.n, H.n, [c.vertices for c in f_copies(H, F)], multi=True)


def dirac_host(n: int = 16, removed_offsets=(1, 2, 3, 8)) -> Hypergraph:
    """Complete graph minus a circulant; with the defaults, 8-regular on 16 vertices."""
    return complement_graph(circulant_graph(n, removed_offsets))
