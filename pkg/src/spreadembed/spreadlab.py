"""Monte-Carlo spread estimation.

A *sampler* is any callable taking a ``numpy`` generator and returning one
output: an ``Embedding`` or image sequence for vertex-spread estimates, an
iterable of host edges for edge-spread estimates. A sampler signals a failed
run by raising ``SamplerFailure``. Trial ``i`` always receives the stream
``(seed, label, i)``, so results do not depend on evaluation order.

Acceptance decisions compare Wilson upper confidence bounds, never point
estimates, against targets.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .cluster import ClusterConfig
from .cyclembed import embed_hamilton_cycle, shifted_cycle_template
from .errors import EstimationAborted, ParameterError, SamplerFailure
from .factorembed import embed_f_factor, factor_template
from .hypercore import Embedding, Hypergraph, _mask
from .rng import trial_streams

DEFAULT_CONFIDENCE = 0.99
DEFAULT_FAILURE_CAP = 0.05

Sampler = Callable[[np.random.Generator], object]


def wilson_interval(hits: int | np.ndarray, trials: int, confidence: float = DEFAULT_CONFIDENCE):
    """Two-sided Wilson score interval ``(low, high)``; works elementwise on arrays."""
    if trials <= 0:
        raise ParameterError("trials must be positive")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = np.asarray(hits, dtype=float) / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z / denom * np.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    low, high = np.clip(center - half, 0, 1), np.clip(center + half, 0, 1)
    # the endpoints are exact at the extremes; keep rounding from hiding that
    low, high = np.where(p == 0, 0.0, low), np.where(p == 1, 1.0, high)
    if np.ndim(low) == 0:
        return float(low), float(high)
    return low, high


@dataclass(frozen=True)
class SpreadProbe:
    """Prescribed assignments ``x_i -> y_i``; distinct on each side."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((int(x), int(y)) for x, y in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len({x for x, _ in pairs}) != len(pairs) or len({y for _, y in pairs}) != len(pairs):
            raise ParameterError(f"probe {pairs} repeats a template or host vertex")

    @property
    def s(self) -> int:
        return len(self.pairs)

    def extend(self, x: int, y: int) -> SpreadProbe:
        return SpreadProbe(self.pairs + ((x, y),))


def all_single_probes(n: int, host_n: int | None = None) -> list[SpreadProbe]:
    host_n = n if host_n is None else host_n
    return [SpreadProbe(((x, y),)) for x in range(n) for y in range(host_n)]


def sample_pair_probes(n: int, count: int, rng: np.random.Generator, host_n: int | None = None) -> list[SpreadProbe]:
    """``count`` distinct probes with two pairs, uniform among valid ones."""
    host_n = n if host_n is None else host_n
    total = n * (n - 1) * host_n * (host_n - 1) // 2
    if count > total:
        raise ParameterError(f"only {total} distinct pair probes exist")
    seen: set[frozenset] = set()
    out = []
    while len(out) < count:
        xs = rng.choice(n, 2, replace=False).tolist()
        ys = rng.choice(host_n, 2, replace=False).tolist()
        key = frozenset(zip(xs, ys))
        if key not in seen:
            seen.add(key)
            out.append(SpreadProbe(tuple(sorted(zip(xs, ys)))))
    return out


@dataclass(frozen=True)
class SpreadReport:
    """Hit counts for a list of probes over ``trials`` successful runs."""

    trials: int
    probes: tuple
    hits: tuple[int, ...]
    confidence: float = DEFAULT_CONFIDENCE
    failures: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.hits, dtype=float) / self.trials

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return wilson_interval(np.asarray(self.hits), self.trials, self.confidence)

    @property
    def upper(self) -> np.ndarray:
        return self.bounds[1]

    @property
    def radii(self) -> np.ndarray:
        low, high = self.bounds
        return (high - low) / 2

    def sizes(self) -> np.ndarray:
        return np.array([_probe_size(p) for p in self.probes])

    def max_frequency(self, s: int | None = None) -> float:
        f = self.frequencies
        if s is not None:
            f = f[self.sizes() == s]
        return float(f.max()) if f.size else 0.0

    def max_upper(self, s: int | None = None) -> float:
        u = self.upper
        if s is not None:
            u = u[self.sizes() == s]
        return float(u.max()) if u.size else 0.0

    def normalized_maxima(self) -> dict[int, float]:
        """``(max frequency)^(1/s)`` per probe size."""
        return {int(s): self.max_frequency(int(s)) ** (1 / s) for s in sorted(set(self.sizes().tolist())) if s > 0}

    def to_jsonl(self) -> str:
        freq, rad, up = self.frequencies, self.radii, self.upper
        lines = []
        for i, p in enumerate(self.probes):
            rec = {"probe": _probe_record(p), "hits": self.hits[i], "trials": self.trials,
                   "frequency": float(freq[i]), "radius": float(rad[i]), "upper": float(up[i])}
            lines.append(json.dumps(rec, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")


def _probe_size(p) -> int:
    return p.s if isinstance(p, SpreadProbe) else len(p)


def _probe_record(p):
    if isinstance(p, SpreadProbe):
        return [list(q) for q in p.pairs]
    return [list(e) for e in sorted(p)]


def _run_trials(sampler: Sampler, trials: int, seed: int, label: str, failure_cap: float) -> tuple[list, int]:
    if trials < 1:
        raise ParameterError("trials must be positive")
    outputs, failures = [], 0
    for rng in trial_streams(seed, label, trials):
        try:
            outputs.append(sampler(rng))
        except SamplerFailure:
            failures += 1
    if failures > failure_cap * trials or not outputs:
        raise EstimationAborted(f"{failures} of {trials} sampler runs failed", failures, trials)
    return outputs, failures


def _image(out) -> tuple[int, ...]:
    return out.image if isinstance(out, Embedding) else tuple(out)


def vertex_hit_matrix(images: np.ndarray, host_n: int) -> np.ndarray:
    """``M[x, y]`` = number of rows with ``images[row, x] == y``."""
    rows, n = images.shape
    flat = (np.arange(n)[None, :] * host_n + images).ravel()
    return np.bincount(flat, minlength=n * host_n).reshape(n, host_n)


def estimate_vertex_spread(
    sampler: Sampler,
    probes: Sequence[SpreadProbe],
    trials: int,
    *,
    seed: int = 0,
    label: str = "vertex-spread",
    failure_cap: float = DEFAULT_FAILURE_CAP,
    confidence: float = DEFAULT_CONFIDENCE,
    host_n: int | None = None,
) -> SpreadReport:
    """Frequency, over successful runs, of each probe's assignments all holding.

    Raises
    ------
    EstimationAborted
        If more than ``failure_cap * trials`` runs fail.
    """
    if not probes:
        raise ParameterError("no probes given")
    outputs, failures = _run_trials(sampler, trials, seed, label, failure_cap)
    images = np.array([_image(o) for o in outputs], dtype=np.int64)
    host_n = int(images.max()) + 1 if host_n is None else host_n
    return SpreadReport(len(outputs), tuple(probes), probe_hits(images, probes, host_n), confidence, failures,
                        {"attempts": trials})


def probe_hits(images: np.ndarray, probes: Sequence[SpreadProbe], host_n: int) -> tuple[int, ...]:
    single = vertex_hit_matrix(images, host_n)
    hits = []
    for p in probes:
        if p.s == 0:
            hits.append(images.shape[0])
        elif p.s == 1:
            (x, y), = p.pairs
            hits.append(int(single[x, y]))
        else:
            mask = np.ones(images.shape[0], dtype=bool)
            for x, y in p.pairs:
                mask &= images[:, x] == y
            hits.append(int(mask.sum()))
    return tuple(hits)


def push_forward_edge_spread(
    sampler: Sampler,
    edge_sets: Sequence[Iterable[Sequence[int]]],
    trials: int,
    *,
    seed: int = 0,
    label: str = "edge-spread",
    failure_cap: float = DEFAULT_FAILURE_CAP,
    confidence: float = DEFAULT_CONFIDENCE,
) -> SpreadReport:
    """Frequency of each queried edge set ``S`` being contained in the sampled edge set."""
    queries = [frozenset(_mask(e) for e in S) for S in edge_sets]
    outputs, failures = _run_trials(sampler, trials, seed, label, failure_cap)
    outs = [frozenset(_mask(e) for e in o) for o in outputs]
    hits = tuple(sum(1 for o in outs if q <= o) for q in queries)
    probes = tuple(tuple(tuple(sorted(e)) for e in S) for S in edge_sets)
    return SpreadReport(len(outs), probes, hits, confidence, failures, {"attempts": trials})


@dataclass(frozen=True)
class SpiroCheck:
    """Per-size outcome: ``verdict`` is ``pass`` (upper bound <= q^t), ``fail`` (lower bound > q^t) or ``inconclusive``."""

    t: int
    selection: tuple[tuple[int, ...], ...]
    hits: int
    trials: int
    target: float
    low: float
    high: float
    verdict: str


@dataclass(frozen=True)
class SpiroReport:
    q: float
    checks: tuple[SpiroCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)

    @property
    def failed(self) -> bool:
        return any(c.verdict == "fail" for c in self.checks)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"t": c.t, "selection": [list(e) for e in c.selection], "hits": c.hits, "trials": c.trials,
                             "target": c.target, "low": c.low, "high": c.high, "verdict": c.verdict},
                            separators=(",", ":")) for c in self.checks]
        return "\n".join(lines) + "\n"


def check_restricted_spiro_spread(
    sampler: Sampler,
    q: float,
    trials: int,
    *,
    sizes: Sequence[int] | None = None,
    seed: int = 0,
    label: str = "spiro",
    failure_cap: float = DEFAULT_FAILURE_CAP,
    confidence: float = DEFAULT_CONFIDENCE,
) -> SpiroReport:
    """Compare ``P(S is fully contained in the output)`` with ``q^t`` for selections ``S`` of each size ``t``.

    Each ``S`` is a uniformly random ``t``-subset of an independent reference
    output (its own stream), so ``S`` is always realizable. ``sizes``
    defaults to every ``t`` from 1 to the output size.
    """
    ref_rng = next(trial_streams(seed, label + "-reference", 1))
    reference = sorted(tuple(sorted(e)) for e in sampler(ref_rng))
    sizes = list(range(1, len(reference) + 1)) if sizes is None else list(sizes)
    pick = next(trial_streams(seed, label + "-selection", 1))
    selections = []
    for t in sizes:
        if not 1 <= t <= len(reference):
            raise ParameterError(f"selection size {t} outside [1, {len(reference)}]")
        idx = sorted(pick.choice(len(reference), t, replace=False).tolist())
        selections.append(tuple(reference[i] for i in idx))
    rep = push_forward_edge_spread(sampler, selections, trials, seed=seed, label=label,
                                   failure_cap=failure_cap, confidence=confidence)
    low, high = rep.bounds
    checks = []
    for i, t in enumerate(sizes):
        target = q ** t
        verdict = "pass" if high[i] <= target else "fail" if low[i] > target else "inconclusive"
        checks.append(SpiroCheck(t, selections[i], rep.hits[i], rep.trials, target, float(low[i]), float(high[i]), verdict))
    return SpiroReport(q, tuple(checks))


@dataclass(frozen=True)
class DistinctCount:
    distinct: int
    trials: int
    colliding_pairs: int

    @property
    def support_estimate(self) -> float:
        """Birthday estimate ``C(trials, 2) / colliding pairs``; infinite with no collisions."""
        if self.colliding_pairs == 0:
            return math.inf
        return math.comb(self.trials, 2) / self.colliding_pairs


def count_distinct_outputs(
    sampler: Sampler,
    trials: int,
    *,
    canonical: Callable[[object], object] = lambda o: o,
    seed: int = 0,
    label: str = "distinct",
    failure_cap: float = DEFAULT_FAILURE_CAP,
) -> DistinctCount:
    outputs, _ = _run_trials(sampler, trials, seed, label, failure_cap)
    tally = Counter(canonical(o) for o in outputs)
    pairs = sum(c * (c - 1) // 2 for c in tally.values())
    return DistinctCount(len(tally), len(outputs), pairs)


# ---- canonical forms ---------------------------------------------------


def canonical_cycle(order: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation or reflection of a cyclic vertex order."""
    seq = list(order)
    n = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for i in range(n):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best or ()


def canonical_edge_set(edges: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(e)) for e in edges))


def image_edges(template: Hypergraph, e: Embedding) -> tuple[tuple[int, ...], ...]:
    img = e.image
    return canonical_edge_set([img[v] for v in t] for t in template.edges)


# ---- ready-made samplers -------------------------------------------------


def cycle_sampler(H: Hypergraph, ell: int, cfg: ClusterConfig | None = None) -> Sampler:
    """Embeddings of the shifted Hamilton ``ell``-cycle from the clustering pipeline."""
    cfg = cfg or ClusterConfig()

    def run(rng: np.random.Generator) -> Embedding:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return embed_hamilton_cycle(H, H.k, ell, cfg, rng, warn=False).psi

    return run


def cycle_edge_sampler(H: Hypergraph, ell: int, cfg: ClusterConfig | None = None) -> Sampler:
    template = shifted_cycle_template(H.n, H.k, ell)
    inner = cycle_sampler(H, ell, cfg)
    return lambda rng: image_edges(template, inner(rng))


def factor_sampler(H: Hypergraph, F: Hypergraph, cfg: ClusterConfig | None = None) -> Sampler:
    cfg = cfg or ClusterConfig()

    def run(rng: np.random.Generator) -> Embedding:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return embed_f_factor(H, F, cfg, rng, warn=False).psi

    return run


def factor_edge_sampler(H: Hypergraph, F: Hypergraph, cfg: ClusterConfig | None = None) -> Sampler:
    template = factor_template(F, H.n // F.n)
    inner = factor_sampler(H, F, cfg)
    return lambda rng: image_edges(template, inner(rng))


def uniform_bijection_sampler(n: int) -> Sampler:
    return lambda rng: Embedding(n, tuple(rng.permutation(n).tolist()))


def constant_sampler(image: Sequence[int]) -> Sampler:
    e = Embedding(len(image), tuple(image))
    return lambda rng: e


def uniform_choice_sampler(options: Sequence[object]) -> Sampler:
    opts = list(options)
    return lambda rng: opts[int(rng.integers(len(opts)))]


def disjoint_edge_pairs(edges: Sequence[Sequence[int]], count: int, rng: np.random.Generator) -> list[tuple]:
    """Up to ``count`` random pairs of vertex-disjoint edges from ``edges``."""
    pairs = [(a, b) for a, b in itertools.combinations(edges, 2) if not set(a) & set(b)]
    if len(pairs) <= count:
        return pairs
    return [pairs[i] for i in sorted(rng.choice(len(pairs), count, replace=False).tolist())]
