"""Benchmark orchestration: configs, deterministic seeding, report output.

A run is a grid of cells. For the link-prediction task a cell is
(graph, sampler, repeat): split the graph, sample negatives, score the
positives and negatives with every configured method, record one AUC per
method. For the recommendation task a cell is (graph, repeat): split, build
top-C lists per method, record VCMPR. Cell seeds are derived from the
master seed by hashing, so results never depend on execution order or
worker count; any cell failure becomes an error row and the run continues.
"""

from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, build_graph, read_edge_list
from .generators import LfrParams, generate_lfr, generate_price
from .metrics import auc_roc, rbo, top_c_recommend, vcmpr_at_c
from .predictors import MethodSpec, score_method
from .sampling import make_split, split_positive

SAMPLERS = ("uniform", "degree-corrected")
TASKS = ("link-prediction", "recommendation")


def derive_seed(master_seed: int, graph_id: str, sampler: str, repeat: int) -> int:
    """Stable 63-bit cell seed: SHA-256 over the cell coordinates."""
    text = f"{master_seed}|{graph_id}|{sampler}|{repeat}"
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % (1 << 63)


@dataclass(frozen=True)
class GraphSource:
    """A graph to benchmark: either a file path or a generator recipe."""

    graph_id: str
    path: str | None = None
    generator: dict | None = None

    def load(self) -> Graph:
        if (self.path is None) == (self.generator is None):
            raise ValueError(
                f"graph {self.graph_id!r} needs exactly one of path/generator")
        if self.path is not None:
            return build_graph(read_edge_list(self.path))
        recipe = dict(self.generator)
        kind = recipe.pop("kind", None)
        if kind == "price":
            return generate_price(recipe.pop("n"), recipe.pop("m_per_node"),
                                  recipe.pop("seed", 0))
        if kind == "lfr":
            seed = recipe.pop("seed", 0)
            g, _ = generate_lfr(LfrParams(**recipe), seed)
            return g
        raise ValueError(f"graph {self.graph_id!r}: unknown generator kind {kind!r}")


@dataclass(frozen=True)
class BenchmarkConfig:
    graphs: tuple
    methods: tuple
    beta: float = 0.25
    repeats: int = 5
    samplers: tuple = SAMPLERS
    top_c: int = 50
    rbo_p: float = 0.5
    master_seed: int = 0
    tasks: tuple = ("link-prediction",)

    def __post_init__(self):
        if not self.graphs:
            raise ValueError("config needs at least one graph")
        if not self.methods:
            raise ValueError("config needs at least one method")
        if not 0 < self.beta < 1:
            raise ValueError("beta must be in (0, 1)")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if not self.samplers or any(s not in SAMPLERS for s in self.samplers):
            raise ValueError(f"samplers must be a non-empty subset of {SAMPLERS}")
        if any(t not in TASKS for t in self.tasks) or not self.tasks:
            raise ValueError(f"tasks must be a non-empty subset of {TASKS}")
        if self.top_c < 1:
            raise ValueError("top_c must be >= 1")
        if not 0 < self.rbo_p < 1:
            raise ValueError("rbo_p must be in (0, 1)")
        ids = [g.graph_id for g in self.graphs]
        if len(set(ids)) != len(ids):
            raise ValueError("graph ids must be unique")
        names = [m.method for m in self.methods]
        if len(set(names)) != len(names):
            raise ValueError("method ids must be unique")

    @staticmethod
    def from_dict(data: dict) -> "BenchmarkConfig":
        known = {"graphs", "methods", "beta", "repeats", "samplers", "top_c",
                 "rbo_p", "master_seed", "tasks"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "graphs" not in data or "methods" not in data:
            raise ValueError("config must list graphs and methods")

        graphs = []
        for entry in data["graphs"]:
            if isinstance(entry, str):
                entry = {"path": entry}
            entry = dict(entry)
            gid = entry.pop("id", None)
            path = entry.pop("path", None)
            generator = entry.pop("generator", None)
            if entry:
                raise ValueError(f"unknown graph keys: {sorted(entry)}")
            if gid is None:
                if path is not None:
                    gid = str(path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
                elif generator is not None:
                    gid = "-".join(str(generator[k]) for k in sorted(generator))
            graphs.append(GraphSource(graph_id=str(gid), path=path,
                                      generator=generator))

        methods = []
        for entry in data["methods"]:
            if isinstance(entry, str):
                methods.append(MethodSpec(method=entry))
            else:
                methods.append(MethodSpec(**entry))

        kwargs = {k: data[k] for k in known & set(data)
                  if k not in ("graphs", "methods")}
        for key in ("samplers", "tasks"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        return BenchmarkConfig(graphs=tuple(graphs), methods=tuple(methods),
                               **kwargs)

    @staticmethod
    def from_json_file(path) -> "BenchmarkConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return BenchmarkConfig.from_dict(json.load(fh))


@dataclass(frozen=True)
class ReportRow:
    graph: str
    method: str
    sampler: str
    repeat: int
    metric: str
    value: float | str


@dataclass
class BenchmarkReport:
    """Long-form result rows plus per-(graph, sampler) method rankings."""

    rows: list = field(default_factory=list)
    rankings: dict = field(default_factory=dict)

    def sorted_rows(self) -> list:
        return sorted(self.rows, key=lambda r: (r.graph, r.sampler, r.method,
                                                r.repeat, r.metric))

    def write_csv(self, path) -> None:
        write_rows_csv(self.sorted_rows(), path)

    def ranking_samplers(self) -> list:
        return sorted({sampler for _, sampler in self.rankings})

    def rankings_for(self, sampler: str) -> dict:
        return {gid: ranking for (gid, s), ranking in self.rankings.items()
                if s == sampler}


def write_rows_csv(rows, path) -> None:
    """Fixed-schema CSV: graph,method,sampler,repeat,metric,value.

    Floats are written with repr (shortest round-trip form), so equal
    results produce byte-identical files.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["graph", "method", "sampler", "repeat", "metric", "value"])
        for r in rows:
            value = repr(float(r.value)) if isinstance(r.value, float) else r.value
            writer.writerow([r.graph, r.method, r.sampler, r.repeat, r.metric, value])


def _load_graphs(config: BenchmarkConfig) -> dict:
    return {src.graph_id: src.load() for src in config.graphs}


def _check_seed_collisions(seeds: list) -> None:
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("derived cell seeds collide; change master_seed")


def _run_cells(cells, worker, jobs: int) -> list:
    if jobs <= 1:
        return [worker(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, cells))


def _append_means_and_rank(report: BenchmarkReport, config: BenchmarkConfig,
                           metric: str, per_cell: dict, sampler_keys) -> None:
    """Aggregate per-repeat values into mean rows and method rankings."""
    mean_metric = metric + "_mean"
    for gid in [g.graph_id for g in config.graphs]:
        for sampler in sampler_keys:
            means = {}
            for spec in config.methods:
                vals = [per_cell[(gid, sampler, rep, spec.method)]
                        for rep in range(config.repeats)
                        if (gid, sampler, rep, spec.method) in per_cell]
                if vals:
                    means[spec.method] = float(np.mean(vals))
                    report.rows.append(ReportRow(gid, spec.method, sampler, -1,
                                                 mean_metric, means[spec.method]))
            if means:
                ranking = sorted(means, key=lambda m: (-means[m], m))
                report.rankings[(gid, sampler)] = ranking


def run_benchmark(config: BenchmarkConfig, jobs: int = 1) -> BenchmarkReport:
    """AUC of every configured method under every configured sampler.

    Within a cell the split and the negative set are shared by all methods,
    so method comparisons see identical instances.
    """
    graphs = _load_graphs(config)
    cells = [(gid, sampler, rep)
             for gid in graphs
             for sampler in config.samplers
             for rep in range(config.repeats)]
    seeds = [derive_seed(config.master_seed, gid, sampler, rep)
             for gid, sampler, rep in cells]
    _check_seed_collisions(seeds)

    def worker(item):
        (gid, sampler, rep), seed = item
        out = []
        try:
            split = make_split(graphs[gid], config.beta, sampler, seed)
        except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
            return [(gid, m.method, sampler, rep, None,
                     f"split failed: {exc}") for m in config.methods]
        for spec in config.methods:
            try:
                pos = score_method(split.train, split.positives, spec)
                neg = score_method(split.train, split.negatives, spec)
                out.append((gid, spec.method, sampler, rep,
                            auc_roc(pos, neg), None))
            except Exception as exc:  # noqa: BLE001
                out.append((gid, spec.method, sampler, rep, None, str(exc)))
        return out

    results = _run_cells(list(zip(cells, seeds)), worker, jobs)

    report = BenchmarkReport()
    per_cell = {}
    for cell_rows in results:
        for gid, method, sampler, rep, value, error in cell_rows:
            if error is None:
                per_cell[(gid, sampler, rep, method)] = value
                report.rows.append(ReportRow(gid, method, sampler, rep,
                                             "auc", value))
            else:
                report.rows.append(ReportRow(gid, method, sampler, rep,
                                             "error", error))
    _append_means_and_rank(report, config, "auc", per_cell, config.samplers)
    return report


RECOMMENDATION = "recommendation"


def run_recommendation(config: BenchmarkConfig, jobs: int = 1) -> BenchmarkReport:
    """VCMPR@C of every configured method on held-out positives.

    The split is sampler-independent; rows carry "recommendation" in the
    sampler column to keep the CSV schema uniform.
    """
    graphs = _load_graphs(config)
    cells = [(gid, rep) for gid in graphs for rep in range(config.repeats)]
    seeds = [derive_seed(config.master_seed, gid, RECOMMENDATION, rep)
             for gid, rep in cells]
    _check_seed_collisions(seeds)

    def worker(item):
        (gid, rep), seed = item
        out = []
        try:
            train, positives = split_positive(graphs[gid], config.beta, seed)
        except Exception as exc:  # noqa: BLE001
            return [(gid, m.method, rep, None, f"split failed: {exc}")
                    for m in config.methods]
        for spec in config.methods:
            try:
                recs = top_c_recommend(train, spec, config.top_c)
                value = vcmpr_at_c(recs, positives, config.top_c)
                out.append((gid, spec.method, rep, value, None))
            except Exception as exc:  # noqa: BLE001
                out.append((gid, spec.method, rep, None, str(exc)))
        return out

    results = _run_cells(list(zip(cells, seeds)), worker, jobs)

    report = BenchmarkReport()
    per_cell = {}
    for cell_rows in results:
        for gid, method, rep, value, error in cell_rows:
            if error is None:
                per_cell[(gid, RECOMMENDATION, rep, method)] = value
                report.rows.append(ReportRow(gid, method, RECOMMENDATION, rep,
                                             "vcmpr", value))
            else:
                report.rows.append(ReportRow(gid, method, RECOMMENDATION, rep,
                                             "error", error))
    _append_means_and_rank(report, config, "vcmpr", per_cell, [RECOMMENDATION])
    return report


def compare_rankings(report_a: BenchmarkReport, report_b: BenchmarkReport,
                     p: float, sampler_a: str | None = None,
                     sampler_b: str | None = None) -> dict:
    """Per-graph RBO between the method rankings of two reports.

    Each report must be narrowed to one sampler (inferred when it only has
    one). Both reports must rank the same graphs and the same method set.

    Returns:
        {"per_graph": {graph_id: rbo}, "mean": float}
    """
    def narrow(report, sampler, name):
        samplers = report.ranking_samplers()
        if sampler is None:
            if len(samplers) != 1:
                raise ValueError(
                    f"report {name} has rankings for {samplers}; pass "
                    f"sampler_{name} to pick one")
            sampler = samplers[0]
        elif sampler not in samplers:
            raise ValueError(f"report {name} has no rankings for {sampler!r}")
        return report.rankings_for(sampler)

    ranks_a = narrow(report_a, sampler_a, "a")
    ranks_b = narrow(report_b, sampler_b, "b")
    if set(ranks_a) != set(ranks_b):
        raise ValueError("reports rank different graph sets")
    per_graph = {gid: rbo(ranks_a[gid], ranks_b[gid], p)
                 for gid in sorted(ranks_a)}
    return {"per_graph": per_graph,
            "mean": float(np.mean(list(per_graph.values())))}


def run_evaluation(config: BenchmarkConfig, jobs: int = 1) -> dict:
    """Run the configured tasks and assemble rows plus a summary dict."""
    reports = {}
    if "link-prediction" in config.tasks:
        reports["link-prediction"] = run_benchmark(config, jobs=jobs)
    if RECOMMENDATION in config.tasks:
        reports[RECOMMENDATION] = run_recommendation(config, jobs=jobs)

    rows = []
    for task in TASKS:
        if task in reports:
            rows.extend(reports[task].sorted_rows())

    rankings: dict = {}
    for report in reports.values():
        for (gid, sampler), ranking in report.rankings.items():
            rankings.setdefault(gid, {})[sampler] = list(ranking)

    summary = {
        "rankings": rankings,
        "failures": [
            {"graph": r.graph, "method": r.method, "sampler": r.sampler,
             "repeat": r.repeat, "reason": r.value}
            for r in rows if r.metric == "error"
        ],
    }

    if "link-prediction" in reports and RECOMMENDATION in reports:
        comparisons = {}
        for sampler in reports["link-prediction"].ranking_samplers():
            comparisons[f"{sampler}_vs_recommendation"] = compare_rankings(
                reports["link-prediction"], reports[RECOMMENDATION],
                config.rbo_p, sampler_a=sampler)
        summary["rbo"] = comparisons

    return {"rows": rows, "summary": summary, "reports": reports}


def write_summary_json(summary: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
