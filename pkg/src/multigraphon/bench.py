"""Benchmark harness: declarative experiment configs, seeded trial loops,
long-format CSV results, and summary tables.

Seeding: the collection for (graphon g, trial t) under master seed s is
drawn with the 64-bit sub-seed SeedSequence([s, g, t]); random sizes use the
stream SeedSequence([s, g, t, 0]). Graph m inside a collection then uses
SeedSequence([sub-seed, m]) (see :mod:`multigraphon.collection`), so adding
or removing methods never perturbs the sampled data, and identical configs
reproduce identical result rows byte for byte (timing column aside).
"""
from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .baselines import estimate_sas_pool, estimate_usvt_pool
from .collection import GraphCollection, sample_collection
from .estimates import StepEstimate
from .evaluation import evaluate_estimate
from .graphons import Graphon
from .jgs import estimate_jgs, joint_sort, normalized_degrees
from .tv import TvParams

__all__ = [
    "METHODS",
    "SizeSpec",
    "ExperimentConfig",
    "ResultRecord",
    "collection_seed",
    "run_benchmark",
    "write_results_csv",
    "summarize",
    "format_summary",
    "RESULT_COLUMNS",
]

METHODS = ("jgs", "jgs-smooth", "sas-pool", "usvt-pool")
JOBS_ENV_VAR = "MULTIGRAPHON_JOBS"

RESULT_COLUMNS = (
    "graphon_id", "M", "size_spec", "seed", "k", "method",
    "mise", "mae", "empty_frac", "seconds",
)


@dataclass(frozen=True)
class SizeSpec:
    """Graph-size rule: every graph has ``n`` nodes, or sizes are drawn
    uniformly from the integers lo..hi (inclusive)."""

    kind: str
    n: int = 0
    lo: int = 0
    hi: int = 0

    def __post_init__(self):
        if self.kind == "fixed":
            if self.n < 1:
                raise ValueError("fixed size must be >= 1")
        elif self.kind == "uniform":
            if not 1 <= self.lo <= self.hi:
                raise ValueError("uniform sizes need 1 <= lo <= hi")
        else:
            raise ValueError(f"unknown size spec kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "SizeSpec":
        parts = text.split(":")
        if parts[0] == "fixed" and len(parts) == 2:
            return cls("fixed", n=int(parts[1]))
        if parts[0] == "uniform" and len(parts) == 3:
            return cls("uniform", lo=int(parts[1]), hi=int(parts[2]))
        raise ValueError(f"bad size spec {text!r}; expected fixed:N or uniform:LO:HI")

    def label(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.n}"
        return f"uniform:{self.lo}:{self.hi}"

    def draw(self, rng: np.random.Generator, count: int) -> list[int]:
        if self.kind == "fixed":
            return [self.n] * count
        return [int(x) for x in rng.integers(self.lo, self.hi + 1, size=count)]


@dataclass(frozen=True)
class ExperimentConfig:
    graphon_ids: tuple[int, ...]
    num_graphs: int
    sizes: SizeSpec
    trials: int = 20
    seed: int = 0
    methods: tuple[str, ...] = ("jgs",)
    k: int | str = "auto"
    lam: float = 0.05
    resolution: int = 1000
    sweep: str | None = None
    sweep_values: tuple[int, ...] = ()
    pool_resolution: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.graphon_ids:
            raise ValueError("need at least one graphon id")
        if not self.methods:
            raise ValueError("need at least one method")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if self.sweep is not None:
            if self.sweep not in ("n", "M", "k"):
                raise ValueError("sweep must be one of n, M, k")
            if not self.sweep_values:
                raise ValueError("sweep requires at least one value")


@dataclass(frozen=True)
class ResultRecord:
    graphon_id: int
    num_graphs: int
    size_label: str
    seed: int
    k: int | None
    method: str
    mise: float | None
    mae: float | None
    empty_frac: float | None
    seconds: float | None
    error: str | None = None

    def row(self) -> list[str]:
        def fmt(x):
            return "" if x is None else (repr(x) if isinstance(x, float) else str(x))

        return [
            str(self.graphon_id), str(self.num_graphs), self.size_label,
            str(self.seed), fmt(self.k), self.method,
            fmt(self.mise), fmt(self.mae), fmt(self.empty_frac), fmt(self.seconds),
        ]


def collection_seed(master: int, graphon_id: int, trial: int) -> int:
    """Documented 64-bit sub-seed mix for one (graphon, trial) cell."""
    return int(np.random.SeedSequence([master, graphon_id, trial]).generate_state(1, np.uint64)[0])


def _estimate(method: str, coll: GraphCollection, cfg: ExperimentConfig, k) -> StepEstimate:
    if method == "jgs":
        return estimate_jgs(coll, k=k)
    if method == "jgs-smooth":
        return estimate_jgs(coll, k=k, smoothing=TvParams(lam=cfg.lam))
    if method == "sas-pool":
        return estimate_sas_pool(coll, lam=cfg.lam, resolution=cfg.pool_resolution)
    if method == "usvt-pool":
        return estimate_usvt_pool(coll, resolution=cfg.pool_resolution)
    raise ValueError(f"unknown method {method!r}")


def _cell_config(cfg: ExperimentConfig, sweep_value: int | None) -> tuple[ExperimentConfig, int | str]:
    """Apply one sweep value; returns the adjusted config and k to use."""
    if sweep_value is None:
        return cfg, cfg.k
    if cfg.sweep == "n":
        return replace(cfg, sizes=SizeSpec("fixed", n=sweep_value)), cfg.k
    if cfg.sweep == "M":
        return replace(cfg, num_graphs=sweep_value), cfg.k
    return cfg, sweep_value  # k-sweep: same collection, different block count


def _run_cell(cfg: ExperimentConfig, graphon_id: int, sweep_value: int | None, trial: int) -> list[ResultRecord]:
    """All methods for one (graphon, sweep value, trial): simulate once, then
    estimate and evaluate per method."""
    cell_cfg, k = _cell_config(cfg, sweep_value)
    spec = Graphon.analytic(graphon_id)
    sub = collection_seed(cfg.seed, graphon_id, trial)
    sizes = cell_cfg.sizes.draw(np.random.default_rng([cfg.seed, graphon_id, trial, 0]), cell_cfg.num_graphs)
    coll, latent = sample_collection(spec, sizes, sub)
    records = []
    for method in cfg.methods:
        try:
            est = _estimate(method, coll, cell_cfg, k)
            ordering = None
            if method in ("jgs", "jgs-smooth"):
                ordering = joint_sort(normalized_degrees(coll).per_graph)
            report = evaluate_estimate(est, spec, resolution=cfg.resolution,
                                       ordering=ordering, latent=latent)
            records.append(ResultRecord(
                graphon_id=graphon_id,
                num_graphs=cell_cfg.num_graphs,
                size_label=cell_cfg.sizes.label(),
                seed=sub,
                k=est.params.get("k"),
                method=method,
                mise=report.mise,
                mae=report.mae_latent,
                empty_frac=report.empty_block_fraction,
                seconds=report.elapsed_seconds,
            ))
        except Exception as exc:  # record the failure, keep the run going
            records.append(ResultRecord(
                graphon_id=graphon_id,
                num_graphs=cell_cfg.num_graphs,
                size_label=cell_cfg.sizes.label(),
                seed=sub,
                k=None,
                method=method,
                mise=None,
                mae=None,
                empty_frac=None,
                seconds=None,
                error=f"{type(exc).__name__}: {exc}",
            ))
    return records


def _cells(cfg: ExperimentConfig):
    sweep_values = cfg.sweep_values if cfg.sweep else (None,)
    for gid in cfg.graphon_ids:
        for sv in sweep_values:
            for trial in range(cfg.trials):
                yield gid, sv, trial


def run_benchmark(cfg: ExperimentConfig) -> list[ResultRecord]:
    """Run every (graphon x sweep value x trial x method) cell.

    Rows come back in deterministic (graphon, sweep value, trial, method)
    order regardless of how many worker processes execute them; set the
    MULTIGRAPHON_JOBS environment variable above 1 to parallelize trials.
    """
    cells = list(_cells(cfg))
    jobs = int(os.environ.get(JOBS_ENV_VAR, "1") or "1")
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_cell, *zip(*[(cfg, g, s, t) for g, s, t in cells])))
    else:
        chunks = [_run_cell(cfg, g, s, t) for g, s, t in cells]
    return [rec for chunk in chunks for rec in chunk]


def write_results_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())


def summarize(records) -> list[dict]:
    """Mean and standard deviation per (graphon, M, sizes, method) group.

    The summary view reports MISE scaled by 10^3 (raw rows keep unscaled
    values); groups follow first-appearance order.
    """
    groups: dict[tuple, list[ResultRecord]] = {}
    for rec in records:
        if rec.mise is None:
            continue
        groups.setdefault((rec.graphon_id, rec.num_graphs, rec.size_label, rec.method), []).append(rec)
    out = []
    for (gid, m, sizes, method), recs in groups.items():
        mises = np.asarray([r.mise for r in recs])
        maes = [r.mae for r in recs if r.mae is not None]
        out.append({
            "graphon_id": gid,
            "M": m,
            "size_spec": sizes,
            "method": method,
            "trials": len(recs),
            "mise_mean_x1e3": float(mises.mean() * 1e3),
            "mise_sd_x1e3": float(mises.std(ddof=1) * 1e3) if len(recs) > 1 else 0.0,
            "mae_mean": float(np.mean(maes)) if maes else None,
            "seconds_mean": float(np.mean([r.seconds for r in recs])),
        })
    return out


def format_summary(summary) -> str:
    header = f"{'graphon':>7} {'M':>5} {'sizes':>16} {'method':>11} {'trials':>6} {'MISE x1e-3':>14} {'MAE':>9} {'sec':>8}"
    lines = [header, "-" * len(header)]
    for row in summary:
        mae = f"{row['mae_mean']:.4f}" if row["mae_mean"] is not None else "-"
        lines.append(
            f"{row['graphon_id']:>7} {row['M']:>5} {row['size_spec']:>16} {row['method']:>11} "
            f"{row['trials']:>6} {row['mise_mean_x1e3']:>7.3f} ± {row['mise_sd_x1e3']:<5.3f}"
            f"{mae:>9} {row['seconds_mean']:>8.3f}"
        )
    return "\n".join(lines)
