"""Command-line front end: ``spreadembed <command> [flags]``.

Every flag can also be set through an environment variable named
``SPREADEMBED_`` plus the flag name in upper case with dashes replaced by
underscores (``--cluster-size`` -> ``SPREADEMBED_CLUSTER_SIZE``). Explicit
flags win over the environment.

Results go to ``--out`` (default: standard output) as JSON lines, or CSV
where supported. With ``--out`` a manifest is written next to the result
file. Errors are reported as a single JSON record on standard error with a
nonzero exit status.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .cluster import ClusterConfig, sample_cluster_partition
from .cyclembed import embed_hamilton_cycle, shifted_cycle_template
from .errors import ParameterError, SamplerFailure, SpreadEmbedError
from .factorembed import embed_f_factor, factor_template
from .hypercore import (
    EllCycleSpec,
    Embedding,
    Hypergraph,
    build_ell_cycle,
    build_ell_path,
    complete_hypergraph,
    empty_hypergraph,
    format_edge_list,
    is_embedding,
    load_edge_list,
    random_hypergraph,
)
from .oracle import audit_counting_lemmas
from .rng import stream
from .roblab import PropertySpec, dirac_host, threshold_sweep
from .spreadlab import (
    all_single_probes,
    cycle_sampler,
    estimate_vertex_spread,
    factor_sampler,
    sample_pair_probes,
    uniform_bijection_sampler,
)

ENV_PREFIX = "SPREADEMBED_"
EXIT_FAILED_CHECK = 1
EXIT_BAD_INPUT = 2
EXIT_SAMPLER = 3

# (flag, type, default, help)
COMMON_FLAGS = [
    ("--seed", int, 0, "master seed"),
    ("--n", int, 18, "vertex count"),
    ("--k", int, 3, "uniformity"),
    ("--ell", int, 1, "cycle overlap"),
    ("--d", int, 1, "degree parameter"),
    ("--cluster-size", int, 6, "cluster size C"),
    ("--t", int, 1, "connector-set size (cluster command)"),
    ("--alpha", float, 0.1, "degree slack"),
    ("--delta", float, 0.2, "target degree fraction"),
    ("--eps", float, 0.2, "neighborhood deficiency"),
    ("--layout", str, "auto", "window layout: auto, classic or compact"),
    ("--trials", int, 1, "number of runs"),
    ("--p-grid", str, "0,0.25,0.5,0.75,1", "comma-separated sparsification probabilities"),
    ("--cap", int, 24, "exact-search size cap"),
    ("--retries", int, 50, "partition retry budget"),
    ("--in", str, None, "input file"),
    ("--out", str, None, "output file (default stdout)"),
    ("--format", str, "jsonl", "output format: jsonl or csv"),
]

FACTORS = {
    "edge": lambda k: Hypergraph(k, k, [tuple(range(k))]),
    "triangle": lambda k: Hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)]),
    "tight-path": lambda k: Hypergraph(k, k + 1, [tuple(range(k)), tuple(range(1, k + 1))]),
}


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    seed: int
    n: int
    k: int
    ell: int
    d: int
    cluster_size: int
    t: int
    alpha: float
    delta: float
    eps: float
    layout: str
    trials: int
    p_grid: str
    cap: int
    retries: int
    in_path: str | None
    out_path: str | None
    format: str
    extra: dict

    def cluster_config(self) -> ClusterConfig:
        return ClusterConfig(C=self.cluster_size, t=self.t, eps=self.eps, alpha=self.alpha, delta=self.delta,
                             d=self.d, retry_budget=self.retries, layout=self.layout, seed=self.seed)

    def grid(self) -> list[float]:
        try:
            return [float(x) for x in self.p_grid.split(",") if x.strip()]
        except ValueError as exc:
            raise ParameterError(f"bad --p-grid {self.p_grid!r}") from exc

    def rng(self, *labels) -> np.random.Generator:
        return stream(self.seed, self.command, *labels)


def _env_name(flag: str) -> str:
    return ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, typ, _default, text in COMMON_FLAGS:
        dest = "in_path" if flag == "--in" else "out_path" if flag == "--out" else None
        kw = {"dest": dest} if dest else {}
        common.add_argument(flag, type=typ, default=None, help=f"{text} (env {_env_name(flag)})", **kw)
    parser = argparse.ArgumentParser(prog="spreadembed", description="Spread embeddings of Hamilton cycles and factors.")
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("gen", parents=[common], help="write a template or host as an edge list")
    gen.add_argument("--kind", default="complete",
                     choices=["complete", "empty", "random", "cycle", "shifted-cycle", "path", "dirac"])
    gen.add_argument("--density", type=float, default=0.5, help="edge probability for --kind random")
    sub.add_parser("embed-cycle", parents=[common], help="sample Hamilton ell-cycle embeddings")
    fac = sub.add_parser("embed-factor", parents=[common], help="sample F-factor embeddings")
    fac.add_argument("--factor", default="edge", choices=sorted(FACTORS))
    fac.add_argument("--factor-in", default=None, help="edge-list file defining F")
    sub.add_parser("cluster", parents=[common], help="sample cluster partitions")
    est = sub.add_parser("estimate-spread", parents=[common], help="Monte-Carlo vertex-spread estimate")
    est.add_argument("--sampler", default="cycle", choices=["cycle", "factor", "bijection"])
    est.add_argument("--factor", default="edge", choices=sorted(FACTORS))
    est.add_argument("--pairs", type=int, default=0, help="number of random two-pair probes")
    sw = sub.add_parser("sweep", parents=[common], help="sparsification threshold sweep")
    sw.add_argument("--property", default="hamilton_cycle", choices=["hamilton_cycle", "f_factor", "perfect_matching"])
    sw.add_argument("--factor", default="edge", choices=sorted(FACTORS))
    sw.add_argument("--host", default="complete", choices=["complete", "dirac"], help="host when --in is absent")
    sub.add_parser("verify-bounds", parents=[common], help="exhaustive counting-lemma checks on the ell-cycle")
    val = sub.add_parser("validate", parents=[common], help="re-check serialized embeddings")
    val.add_argument("--host", default=None, help="host edge list (default: complete host)")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    values = {}
    for flag, typ, default, _ in COMMON_FLAGS:
        dest = {"--in": "in_path", "--out": "out_path"}.get(flag, flag.lstrip("-").replace("-", "_"))
        val = getattr(args, dest)
        if val is None and _env_name(flag) in os.environ:
            raw = os.environ[_env_name(flag)]
            try:
                val = typ(raw)
            except ValueError as exc:
                raise ParameterError(f"environment variable {_env_name(flag)}={raw!r} is not a valid {typ.__name__}") from exc
        values[dest] = default if val is None else val
    if values["format"] not in ("jsonl", "csv"):
        raise ParameterError(f"--format must be jsonl or csv, got {values['format']!r}")
    if values["trials"] < 1:
        raise ParameterError("--trials must be positive")
    common = {dest for dest in values} | {"command"}
    extra = {k: v for k, v in vars(args).items() if k not in common}
    return ExperimentConfig(command=args.command, extra=extra, **values)


def _host(cfg: ExperimentConfig) -> Hypergraph:
    if cfg.in_path:
        return load_edge_list(cfg.in_path)
    return complete_hypergraph(cfg.n, cfg.k)


def _factor(cfg: ExperimentConfig) -> Hypergraph:
    path = cfg.extra.get("factor_in")
    if path:
        return load_edge_list(path)
    return FACTORS[cfg.extra.get("factor", "edge")](cfg.k)


def _jsonl(records) -> str:
    return "".join(json.dumps(r, separators=(",", ":"), sort_keys=True) + "\n" for r in records)


def _require_jsonl(cfg: ExperimentConfig) -> None:
    if cfg.format != "jsonl":
        raise ParameterError(f"{cfg.command} only writes jsonl")


def cmd_gen(cfg: ExperimentConfig) -> tuple[str, int]:
    kind = cfg.extra["kind"]
    if kind == "complete":
        H = complete_hypergraph(cfg.n, cfg.k)
    elif kind == "empty":
        H = empty_hypergraph(cfg.n, cfg.k)
    elif kind == "random":
        H = random_hypergraph(cfg.n, cfg.k, cfg.extra["density"], cfg.rng("host"))
    elif kind in ("cycle", "shifted-cycle"):
        H = build_ell_cycle(EllCycleSpec(cfg.n, cfg.k, cfg.ell, shifted=kind == "shifted-cycle"))
    elif kind == "path":
        H = build_ell_path(cfg.n, cfg.k, cfg.ell)
    else:
        H = dirac_host(cfg.n)
    return format_edge_list(H), 0


def cmd_embed_cycle(cfg: ExperimentConfig) -> tuple[str, int]:
    _require_jsonl(cfg)
    H = _host(cfg)
    records, status = [], 0
    for i in range(cfg.trials):
        try:
            A = embed_hamilton_cycle(H, H.k, cfg.ell, cfg.cluster_config(), cfg.rng(i))
        except SamplerFailure as exc:
            records.append({"trial": i, "error": type(exc).__name__, "message": str(exc),
                            "stage_failures": getattr(exc, "stage_failures", {})})
            status = EXIT_SAMPLER
            continue
        rec = json.loads(A.to_json())
        rec.update({"trial": i, "kind": "cycle"})
        records.append(rec)
    return _jsonl(records), status


def cmd_embed_factor(cfg: ExperimentConfig) -> tuple[str, int]:
    _require_jsonl(cfg)
    H, F = _host(cfg), _factor(cfg)
    records, status = [], 0
    for i in range(cfg.trials):
        try:
            A = embed_f_factor(H, F, cfg.cluster_config(), cfg.rng(i))
        except SamplerFailure as exc:
            records.append({"trial": i, "error": type(exc).__name__, "message": str(exc),
                            "stage_failures": getattr(exc, "stage_failures", {})})
            status = EXIT_SAMPLER
            continue
        rec = json.loads(A.to_json())
        rec.update({"trial": i, "kind": "factor", "k": H.k, "factor": {"n": F.n, "edges": [list(e) for e in F.edges]}})
        records.append(rec)
    return _jsonl(records), status


def cmd_cluster(cfg: ExperimentConfig) -> tuple[str, int]:
    _require_jsonl(cfg)
    H = _host(cfg)
    records = []
    for i in range(cfg.trials):
        P = sample_cluster_partition(H, cfg.cluster_config(), cfg.rng(i))
        rec = json.loads(P.to_json())
        rec["trial"] = i
        records.append(rec)
    return _jsonl(records), 0


def cmd_estimate_spread(cfg: ExperimentConfig) -> tuple[str, int]:
    kind = cfg.extra["sampler"]
    if kind == "bijection":
        n, sampler = cfg.n, uniform_bijection_sampler(cfg.n)
    else:
        H = _host(cfg)
        n = H.n
        sampler = cycle_sampler(H, cfg.ell, cfg.cluster_config()) if kind == "cycle" else \
            factor_sampler(H, _factor(cfg), cfg.cluster_config())
    probes = all_single_probes(n)
    if cfg.extra["pairs"]:
        probes += sample_pair_probes(n, cfg.extra["pairs"], cfg.rng("probes"))
    rep = estimate_vertex_spread(sampler, probes, cfg.trials, seed=cfg.seed, label=f"estimate-spread/{kind}", host_n=n)
    if cfg.format == "csv":
        freq, rad, up = rep.frequencies, rep.radii, rep.upper
        lines = ["probe,hits,trials,frequency,radius,upper"]
        for i, p in enumerate(rep.probes):
            tag = ";".join(f"{x}>{y}" for x, y in p.pairs)
            lines.append(f"{tag},{rep.hits[i]},{rep.trials},{float(freq[i])!r},{float(rad[i])!r},{float(up[i])!r}")
        return "\n".join(lines) + "\n", 0
    return rep.to_jsonl(), 0


def cmd_sweep(cfg: ExperimentConfig) -> tuple[str, int]:
    if cfg.in_path:
        H = load_edge_list(cfg.in_path)
    elif cfg.extra["host"] == "dirac":
        H = dirac_host(cfg.n)
    else:
        H = complete_hypergraph(cfg.n, cfg.k)
    prop = cfg.extra["property"]
    spec = PropertySpec(prop, ell=cfg.ell if prop == "hamilton_cycle" else None,
                        F=_factor(cfg) if prop == "f_factor" else None)
    res = threshold_sweep(H, spec, cfg.grid(), cfg.trials, cfg.seed, cap=cfg.cap)
    if cfg.format == "csv":
        return res.to_csv(), 0
    recs = [{"property": res.property_label, "p": p, "trials": t, "successes": s, "frequency": f}
            for p, t, s, f in zip(res.p_grid, res.trials, res.successes, res.frequencies)]
    return _jsonl(recs), 0


def cmd_verify_bounds(cfg: ExperimentConfig) -> tuple[str, int]:
    _require_jsonl(cfg)
    audits = audit_counting_lemmas(cfg.n, cfg.k, cfg.ell)
    recs = [{"check": a.name, "n": cfg.n, "k": cfg.k, "ell": cfg.ell, "checked": a.checked,
             "violations": len(a.violations), "ok": a.ok} for a in audits]
    return _jsonl(recs), 0 if all(a.ok for a in audits) else EXIT_FAILED_CHECK


def cmd_validate(cfg: ExperimentConfig) -> tuple[str, int]:
    _require_jsonl(cfg)
    if not cfg.in_path:
        raise ParameterError("validate needs --in")
    host_path = cfg.extra.get("host")
    fixed_host = load_edge_list(host_path) if host_path else None
    recs, status = [], 0
    for lineno, line in enumerate(Path(cfg.in_path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        rec = json.loads(line)
        if "error" in rec:
            continue
        n, k = rec["n"], rec["k"]
        psi = Embedding(n, tuple(rec["psi"]))
        H = fixed_host or complete_hypergraph(n, k)
        if rec.get("kind") == "cycle":
            template = shifted_cycle_template(n, k, rec["ell"])
        elif rec.get("kind") == "factor":
            F = Hypergraph(k, rec["factor"]["n"], rec["factor"]["edges"])
            template = factor_template(F, n // F.n)
        else:
            raise ParameterError(f"line {lineno}: unknown record kind {rec.get('kind')!r}")
        ok = is_embedding(template, H, psi)
        status = status or (0 if ok else EXIT_FAILED_CHECK)
        recs.append({"line": lineno, "trial": rec.get("trial"), "kind": rec["kind"], "valid": ok})
    return _jsonl(recs), status


COMMANDS = {
    "gen": cmd_gen,
    "embed-cycle": cmd_embed_cycle,
    "embed-factor": cmd_embed_factor,
    "cluster": cmd_cluster,
    "estimate-spread": cmd_estimate_spread,
    "sweep": cmd_sweep,
    "verify-bounds": cmd_verify_bounds,
    "validate": cmd_validate,
}


def run(cfg: ExperimentConfig) -> int:
    started = time.perf_counter()
    text, status = COMMANDS[cfg.command](cfg)
    if cfg.out_path:
        out = Path(cfg.out_path)
        out.write_text(text)
        manifest = {
            "config": asdict(cfg),
            "seed": cfg.seed,
            "status": status,
            "versions": {"spreadembed": __version__, "numpy": np.__version__, "python": platform.python_version()},
            "wall_time_s": round(time.perf_counter() - started, 6),
        }
        Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(resolve_config(args))
    except SamplerFailure as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "command": args.command}) + "\n")
        return EXIT_SAMPLER
    except (SpreadEmbedError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "command": args.command}) + "\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
