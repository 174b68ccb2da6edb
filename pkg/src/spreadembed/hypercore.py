"""Uniform hypergraphs, cycle and path templates, degrees and densities.

Vertices are the integers ``0..n-1``. Edges are sorted ``k``-tuples kept in a
canonical sorted order; a bitmask copy of every edge supports constant-time
membership tests and cheap induced-subgraph queries.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import CapacityError, DivisibilityError, FormatError, ParameterError

# exhaustive subgraph enumeration for densities is capped at this many edges
DENSITY_EDGE_CAP = 16


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Hypergraph:
    """An immutable ``k``-uniform hypergraph on ``0..n-1``.

    Parameters
    ----------
    k : int
        Uniformity, at least 2 (``k = 1`` is accepted for degenerate templates).
    n : int
        Number of vertices.
    edges : iterable of iterables
        Each edge is a collection of ``k`` distinct vertices.
    multi : bool
        Allow repeated edges on the same vertex set.

    Raises
    ------
    ParameterError
        If an edge has the wrong size, repeated vertices, or out-of-range
        vertices, or if a duplicate edge is given while ``multi`` is False.
    """

    __slots__ = ("k", "n", "edges", "multi", "_masks", "_mask_set", "_array", "_cache", "_incident")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = (), multi: bool = False):
        if k < 1:
            raise ParameterError(f"uniformity must be positive, got {k}")
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        canon = []
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != k:
                raise ParameterError(f"edge {t} does not have exactly {k} vertices")
            if len(set(t)) != k:
                raise ParameterError(f"edge {t} repeats a vertex")
            if t and (t[0] < 0 or t[-1] >= n):
                raise ParameterError(f"edge {t} has a vertex outside 0..{n - 1}")
            canon.append(t)
        canon.sort()
        if not multi:
            for a, b in zip(canon, canon[1:]):
                if a == b:
                    raise ParameterError(f"duplicate edge {a} in a simple hypergraph")
        self.k = k
        self.n = n
        self.edges: tuple[tuple[int, ...], ...] = tuple(canon)
        self.multi = multi
        self._masks: tuple[int, ...] | None = None
        self._mask_set: frozenset[int] | None = None
        self._array: np.ndarray | None = None
        self._incident: list[list[int]] | None = None
        self._cache: dict = {}

    # ---- basic views -------------------------------------------------

    def __repr__(self) -> str:
        kind = "multi-" if self.multi else ""
        return f"Hypergraph(k={self.k}, n={self.n}, {kind}edges={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.k, self.n, self.multi, self.edges) == (other.k, other.n, other.multi, other.edges)

    def __hash__(self) -> int:
        return hash((self.k, self.n, self.multi, self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_masks(self) -> tuple[int, ...]:
        if self._masks is None:
            self._masks = tuple(_mask(e) for e in self.edges)
        return self._masks

    @property
    def mask_set(self) -> frozenset[int]:
        if self._mask_set is None:
            self._mask_set = frozenset(self.edge_masks)
        return self._mask_set

    @property
    def edge_array(self) -> np.ndarray:
        if self._array is None:
            arr = np.array(self.edges, dtype=np.int64)
            self._array = arr.reshape(len(self.edges), self.k)
        return self._array

    @property
    def incidence(self) -> list[list[int]]:
        """Edge indices containing each vertex."""
        if self._incident is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for v in e:
                    inc[v].append(i)
            self._incident = inc
        return self._incident

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return _mask(vertices) in self.mask_set

    def has_edge_mask(self, mask: int) -> bool:
        return mask in self.mask_set

    def degrees(self) -> np.ndarray:
        if not self.edges:
            return np.zeros(self.n, dtype=np.int64)
        return np.bincount(self.edge_array.ravel(), minlength=self.n)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def restrict(self, vertices: Iterable[int]) -> Hypergraph:
        """Edges inside ``vertices``, keeping the original labels."""
        m = _mask(vertices)
        kept = [e for e, em in zip(self.edges, self.edge_masks) if em & ~m == 0]
        return Hypergraph(self.k, self.n, kept, self.multi)

    def relabel(self, vertices: Sequence[int]) -> Hypergraph:
        """Induced sub-hypergraph on ``vertices``, relabeled to ``0..len-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        kept = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph(self.k, len(vertices), kept, self.multi)

    def with_edges(self, edges: Iterable[Iterable[int]]) -> Hypergraph:
        return Hypergraph(self.k, self.n, edges, self.multi)

    # ---- degrees of induced sub-hypergraphs ---------------------------

    def induced_min_degree(self, vertices: Iterable[int], d: int) -> int:
        """Minimum ``d``-degree of the sub-hypergraph induced on ``vertices`` (memoized)."""
        verts = sorted(set(vertices))
        key = (_mask(verts), d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        val = _induced_min_degree(self, verts, d)
        self._cache[key] = val
        return val


def _induced_min_degree(H: Hypergraph, verts: list[int], d: int) -> int:
    if len(verts) < d or len(verts) < H.k or not H.edges:
        return 0
    if math.comb(len(verts), H.k) * 8 < len(H.edges):
        return _induced_min_degree_small(H, verts, d)
    member = np.zeros(H.n, dtype=bool)
    member[verts] = True
    inside = H.edge_array[member[H.edge_array].all(axis=1)]
    if d == 1:
        counts = np.bincount(inside.ravel(), minlength=H.n)
        return int(counts[verts].min())
    tally: Counter = Counter()
    for e in inside.tolist():
        tally.update(itertools.combinations(e, d))
    if len(tally) < math.comb(len(verts), d):
        return 0
    return min(tally.values())


def _induced_min_degree_small(H: Hypergraph, verts: list[int], d: int) -> int:
    # few candidate k-sets: test each for membership instead of scanning all edges
    edges = H.mask_set
    tally: Counter = Counter({D: 0 for D in itertools.combinations(verts, d)})
    for e in itertools.combinations(verts, H.k):
        if _mask(e) in edges:
            tally.update(itertools.combinations(e, d))
    return min(tally.values())


def min_d_degree(H: Hypergraph, d: int) -> int:
    """Minimum number of edges containing a ``d``-subset of the vertex set.

    Raises
    ------
    ParameterError
        If ``d`` is not in ``[1, k-1]`` or the vertex set is empty.
    """
    if not 1 <= d <= H.k - 1:
        raise ParameterError(f"d must lie in [1, {H.k - 1}], got {d}")
    if H.n == 0:
        raise ParameterError("vertex set is empty")
    return H.induced_min_degree(range(H.n), d)


def degree_threshold(delta: float, size: int, k: int, d: int) -> float:
    """``delta * C(size, k-d)``, the normalized degree cutoff used by the clustering routines."""
    return delta * math.comb(size, k - d)


# ---- standard hosts --------------------------------------------------


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, itertools.combinations(range(n), k))


def empty_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, ())


def random_hypergraph(n: int, k: int, p: float, rng: np.random.Generator) -> Hypergraph:
    """Binomial random ``k``-graph: each ``k``-set is an edge independently with probability ``p``."""
    all_sets = list(itertools.combinations(range(n), k))
    keep = rng.random(len(all_sets)) < p
    return Hypergraph(k, n, [e for e, kp in zip(all_sets, keep) if kp])


def disjoint_union(*parts: Hypergraph) -> Hypergraph:
    k = parts[0].k
    edges, offset = [], 0
    for P in parts:
        if P.k != k:
            raise ParameterError("all parts must share the same uniformity")
        edges.extend(tuple(v + offset for v in e) for e in P.edges)
        offset += P.n
    return Hypergraph(k, offset, edges, any(P.multi for P in parts))


def circulant_graph(n: int, offsets: Iterable[int]) -> Hypergraph:
    """Graph on ``Z_n`` joining ``i`` and ``i ± s`` for each offset ``s``."""
    edges = set()
    for s in offsets:
        for i in range(n):
            j = (i + s) % n
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Hypergraph(2, n, edges)


def complement_graph(G: Hypergraph) -> Hypergraph:
    if G.k != 2:
        raise ParameterError("complement is defined here for graphs only")
    present = set(G.edges)
    return Hypergraph(2, G.n, (e for e in itertools.combinations(range(G.n), 2) if e not in present))


# ---- cycles and paths --------------------------------------------------


@dataclass(frozen=True)
class EllCycleSpec:
    """Parameters of the ``ell``-cycle on ``n`` vertices; ``shifted`` moves every edge back by ``ell``."""

    n: int
    k: int
    ell: int
    shifted: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.ell < self.k:
            raise ParameterError(f"ell must satisfy 0 <= ell < k, got ell={self.ell}, k={self.k}")
        if self.n <= 0 or self.n % (self.k - self.ell):
            raise DivisibilityError(f"k - ell = {self.k - self.ell} must divide n = {self.n}")

    @property
    def edge_count(self) -> int:
        return self.n // (self.k - self.ell)


def cycle_edges(n: int, k: int, ell: int, shift: int = 0) -> list[tuple[int, ...]]:
    """Edge ``i`` is the window ``{(k-ell)*i + j - shift : 0 <= j < k}`` modulo ``n``."""
    step = k - ell
    return [tuple(sorted((step * i + j - shift) % n for j in range(k))) for i in range(n // step)]


def build_ell_cycle(spec: EllCycleSpec) -> Hypergraph:
    """The ``ell``-cycle (or its shifted variant) as a hypergraph."""
    n, k, ell = spec.n, spec.k, spec.ell
    if n <= k and spec.edge_count > 1:
        raise ParameterError(f"an ell-cycle on n={n} <= k={k} vertices would repeat edges")
    return Hypergraph(k, n, cycle_edges(n, k, ell, ell if spec.shifted else 0))


def build_ell_path(n: int, k: int, ell: int) -> Hypergraph:
    """The ``ell``-path on ``0..n-1``: cycle windows without wraparound."""
    if not 0 <= ell < k:
        raise ParameterError(f"ell must satisfy 0 <= ell < k, got ell={ell}, k={k}")
    if n < k or (n - ell) % (k - ell):
        raise DivisibilityError(f"an ell-path needs n >= k and n = ell mod (k-ell); got n={n}")
    step = k - ell
    return Hypergraph(k, n, [tuple(range(step * i, step * i + k)) for i in range((n - ell) // step)])


def f_param(k: int, ell: int) -> int:
    """Connector length ``ceil((2k - ell) / (k - ell))``."""
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}, k={k}")
    return -(-(2 * k - ell) // (k - ell))


def is_path_divisible(size: int, k: int, ell: int) -> bool:
    return (size - ell) % (k - ell) == 0


def is_internal_path_divisible(size: int, k: int, ell: int) -> bool:
    return (size + ell) % (k - ell) == 0


def path_windows(sequence: Sequence[int], k: int, ell: int, cyclic: bool = False) -> list[tuple[int, ...]]:
    """The ``k``-windows at stride ``k - ell`` of a vertex sequence, as sorted tuples."""
    step, n = k - ell, len(sequence)
    if cyclic:
        return [tuple(sorted(sequence[(step * i + j) % n] for j in range(k))) for i in range(n // step)]
    return [tuple(sorted(sequence[step * i: step * i + k])) for i in range((n - ell) // step)]


# ---- densities ---------------------------------------------------------


def one_density(H: Hypergraph) -> Fraction:
    """``|E| / (|V| - 1)`` as an exact rational."""
    if H.n <= 1:
        raise ParameterError("one-density needs at least two vertices")
    return Fraction(len(H.edges), H.n - 1)


def _check_density_cap(H: Hypergraph) -> None:
    if len(H.edges) > DENSITY_EDGE_CAP:
        raise CapacityError(f"{len(H.edges)} edges exceeds the density enumeration cap {DENSITY_EDGE_CAP}")


def _spanned(masks: Sequence[int], subset: int) -> tuple[int, int, bool]:
    """Vertex mask, edge count and connectivity of the edges picked by bitmask ``subset``."""
    chosen = [masks[i] for i in range(len(masks)) if subset >> i & 1]
    if not chosen:
        return 0, 0, True
    verts = 0
    for m in chosen:
        verts |= m
    reach, rest = chosen[0], chosen[1:]
    grew = True
    while grew and rest:
        grew = False
        keep = []
        for m in rest:
            if m & reach:
                reach |= m
                grew = True
            else:
                keep.append(m)
        rest = keep
    return verts, len(chosen), not rest


def m1(H: Hypergraph) -> Fraction:
    """Maximum one-density over subgraphs with at least two vertices (exhaustive)."""
    _check_density_cap(H)
    if H.n <= 1:
        raise ParameterError("m1 needs at least two vertices")
    best = Fraction(0)
    masks = H.edge_masks
    for subset in range(1, 1 << len(masks)):
        verts, t, connected = _spanned(masks, subset)
        if not connected:
            continue
        v = verts.bit_count()
        if v > 1:
            best = max(best, Fraction(t, v - 1))
    return best


def is_strictly_one_balanced(H: Hypergraph) -> bool:
    """True iff every proper subgraph with an edge has strictly smaller one-density."""
    _check_density_cap(H)
    whole = one_density(H)
    masks = H.edge_masks
    full = (1 << len(masks)) - 1
    for subset in range(1, full + 1):
        verts, t, _ = _spanned(masks, subset)
        v = verts.bit_count()
        if subset == full and v == H.n:
            continue
        if v > 1 and Fraction(t, v - 1) >= whole:
            return False
    return True


# ---- embeddings --------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """A map from template vertices ``0..target_n-1`` to host vertices."""

    target_n: int
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != self.target_n:
            raise ParameterError(f"image has length {len(self.image)}, expected {self.target_n}")

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def to_line(self) -> str:
        return " ".join(str(v) for v in (self.target_n, *self.image))

    @classmethod
    def from_line(cls, line: str) -> Embedding:
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FormatError(f"non-integer token in embedding line: {line!r}") from exc
        if not nums or len(nums) != nums[0] + 1:
            raise FormatError("embedding line must be the size followed by that many vertices")
        return cls(nums[0], tuple(nums[1:]))


def is_embedding(template: Hypergraph, host: Hypergraph, e: Embedding) -> bool:
    """True iff ``e`` is injective and sends every template edge onto a host edge."""
    img = e.image
    if e.target_n != template.n or len(img) != template.n:
        return False
    if any(not 0 <= v < host.n for v in img) or len(set(img)) != len(img):
        return False
    edges = host.mask_set
    return all(_mask(img[v] for v in t) in edges for t in template.edges)


# ---- components and spanned subgraphs ----------------------------------


def edge_components(edges: Sequence[Sequence[int]]) -> int:
    """Number of connected components of the hypergraph spanned by ``edges``."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        for v in e:
            parent.setdefault(v, v)
        r0 = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != r0:
                parent[rv] = r0
    return len({find(v) for v in parent})


def spanned_subgraph(k: int, edges: Sequence[Sequence[int]]) -> Hypergraph:
    """The hypergraph formed by ``edges`` alone, vertices relabeled in increasing order."""
    verts = sorted({v for e in edges for v in e})
    pos = {v: i for i, v in enumerate(verts)}
    return Hypergraph(k, len(verts), [tuple(pos[v] for v in e) for e in edges])


# ---- text edge lists ---------------------------------------------------


def format_edge_list(H: Hypergraph) -> str:
    lines = [f"{H.k} {H.n} {len(H.edges)}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, multi: bool = False) -> Hypergraph:
    """Parse the ``k n m`` header plus ``m`` edge lines; ``#`` starts a comment line."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise FormatError("missing header line")
    try:
        k, n, m = (int(x) for x in rows[0])
    except ValueError as exc:
        raise FormatError(f"header must be three integers 'k n m', got {rows[0]}") from exc
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges but {len(body)} lines follow")
    edges = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != k:
            raise FormatError(f"edge line {lineno} has {len(row)} vertices, expected {k}")
        try:
            edges.append(tuple(int(x) for x in row))
        except ValueError as exc:
            raise FormatError(f"edge line {lineno} has a non-integer vertex") from exc
    try:
        return Hypergraph(k, n, edges, multi)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def save_edge_list(H: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(H))


def load_edge_list(path: str | Path, multi: bool = False) -> Hypergraph:
    return parse_edge_list(Path(path).read_text(), multi)
