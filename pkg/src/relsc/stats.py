"""Corpus statistics: size tables, category/relation distributions,
structural metrics, degree and target histograms.

Structural metrics are computed on the undirected simplification
(parallel edges collapsed); diameter and path length on the largest
connected component. That interpretation is recorded in every report.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Mapping, Sequence

import networkx as nx
import numpy as np

from .graphs import ProgramGraph
from .relational import NUM_CATEGORIES, relation_histogram
from .taxonomy import CATEGORY_NAMES, categorize

STRUCTURAL_MODE = "undirected simple graph; diameter/path length on largest component"

# Mass below this normalized-target threshold is reported so heavy
# low-end skew (common in execution-time corpora) is visible.
LOW_TARGET_THRESHOLD = 0.22


@dataclass(frozen=True)
class SizeStats:
    dataset: str
    variant: str
    count: int
    nodes_mean: float
    nodes_std: float
    nodes_min: int
    nodes_max: int
    edges_mean: float
    edges_std: float
    edges_min: int
    edges_max: int


def size_stats(graphs_by_dataset: Mapping[str, Sequence[ProgramGraph]]) -> list[SizeStats]:
    """Per-dataset mean/std/min/max of |V| and |E| (population std)."""
    rows = []
    for dataset in sorted(graphs_by_dataset):
        by_variant: dict[str, list[ProgramGraph]] = {}
        for g in graphs_by_dataset[dataset]:
            by_variant.setdefault(g.variant, []).append(g)
        for variant in sorted(by_variant):
            gs = by_variant[variant]
            nv = np.array([g.num_nodes for g in gs], dtype=float)
            ne = np.array([g.num_edges for g in gs], dtype=float)
            rows.append(
                SizeStats(
                    dataset, variant, len(gs),
                    float(nv.mean()), float(nv.std()), int(nv.min()), int(nv.max()),
                    float(ne.mean()), float(ne.std()), int(ne.min()), int(ne.max()),
                )
            )
    return rows


def category_counts(g: ProgramGraph) -> np.ndarray:
    counts = np.zeros(NUM_CATEGORIES, dtype=np.int64)
    for n in g.nodes:
        counts[categorize(n.node_type).ordinal] += 1
    return counts


def category_distribution(graphs: Sequence[ProgramGraph]) -> list[dict]:
    """Per-category mean node count and standard error over graphs.

    SE uses the sample standard deviation (ddof=1); zero for n == 1.
    """
    counts = np.stack([category_counts(g) for g in graphs]).astype(float)
    n = counts.shape[0]
    means = counts.mean(axis=0)
    if n > 1:
        se = counts.std(axis=0, ddof=1) / np.sqrt(n)
    else:
        se = np.zeros(NUM_CATEGORIES)
    return [
        {"category": CATEGORY_NAMES[i], "mean_count": float(means[i]), "standard_error": float(se[i])}
        for i in range(NUM_CATEGORIES)
    ]


def mean_relation_matrix(graphs: Sequence[ProgramGraph]) -> np.ndarray:
    """Average 7x7 relation-count matrix over relsc_m graphs."""
    total = np.zeros((NUM_CATEGORIES, NUM_CATEGORIES), dtype=float)
    for g in graphs:
        total += relation_histogram(g)
    return total / max(1, len(graphs))


def _undirected_simple(g: ProgramGraph) -> nx.Graph:
    ug = nx.Graph()
    ug.add_nodes_from(n.id for n in g.nodes)
    ug.add_edges_from((e.src, e.dst) for e in g.edges)
    return ug


@dataclass(frozen=True)
class StructuralMetrics:
    density: float
    avg_degree: float
    clustering: float
    diameter: float
    avg_path_length: float
    assortativity: float | None


def structural_metrics(g: ProgramGraph) -> StructuralMetrics:
    """Density, degree, clustering, diameter, path length, assortativity."""
    ug = _undirected_simple(g)
    n = ug.number_of_nodes()
    m = ug.number_of_edges()
    if n < 2:
        return StructuralMetrics(0.0, 0.0, 0.0, 0.0, 0.0, None)
    density = 2.0 * m / (n * (n - 1))
    avg_degree = 2.0 * m / n
    clustering = nx.average_clustering(ug)
    component = max(nx.connected_components(ug), key=len)
    sub = ug.subgraph(component)
    if sub.number_of_nodes() < 2:
        diameter, path_length = 0.0, 0.0
    else:
        ecc = nx.eccentricity(sub)
        diameter = float(max(ecc.values()))
        path_length = float(nx.average_shortest_path_length(sub))
    if m == 0:
        assort = None
    else:
        with np.errstate(invalid="ignore", divide="ignore"):
            a = nx.degree_assortativity_coefficient(ug)
        assort = None if np.isnan(a) else float(a)
    return StructuralMetrics(density, avg_degree, clustering, diameter, path_length, assort)


def degree_histogram(graphs: Sequence[ProgramGraph]) -> list[tuple[int, int]]:
    """Total (in+out) degree histogram over the multigraph edges."""
    counts: dict[int, int] = {}
    for g in graphs:
        deg = [0] * g.num_nodes
        for e in g.edges:
            deg[e.src] += 1
            deg[e.dst] += 1
        for d in deg:
            counts[d] = counts.get(d, 0) + 1
    return sorted(counts.items())


def target_histogram(graphs: Sequence[ProgramGraph], bins: int = 20) -> list[int]:
    """Fixed-width bins over [0, 1]; bins are [l, r) with the last closed."""
    hist = [0] * bins
    for g in graphs:
        if g.target is None:
            raise ValueError(f"graph {g.provenance} has no target")
        idx = min(int(g.target * bins), bins - 1)
        hist[idx] += 1
    return hist


def low_target_share(graphs: Sequence[ProgramGraph], threshold: float = LOW_TARGET_THRESHOLD) -> float:
    targets = [g.target for g in graphs]
    return sum(1 for t in targets if t is not None and t <= threshold) / max(1, len(targets))


# -- report emission -----------------------------------------------------------


def _one_variant_per_file(graphs: Sequence[ProgramGraph]) -> tuple[str, list[ProgramGraph]]:
    """Pick one variant per provenance so per-graph statistics are not
    double counted when several variants of a corpus are loaded.
    Prefers relsc_h (node sets are identical across variants anyway)."""
    by_file: dict[str, dict[str, ProgramGraph]] = {}
    for g in graphs:
        by_file.setdefault(g.provenance, {})[g.variant] = g
    chosen: list[ProgramGraph] = []
    used: set[str] = set()
    for path in sorted(by_file):
        variants = by_file[path]
        for preference in ("relsc_h", "relsc_m", "ast_only"):
            if preference in variants:
                chosen.append(variants[preference])
                used.add(preference)
                break
    return "+".join(sorted(used)), chosen


def corpus_report(graphs_by_dataset: Mapping[str, Sequence[ProgramGraph]], bins: int = 20) -> dict:
    """All statistics for a corpus, as one JSON-serializable document.

    Size stats are per (dataset, variant); every other statistic uses
    one variant per file (relsc_h preferred) to avoid double counting.
    """
    report: dict = {
        "structural_mode": STRUCTURAL_MODE,
        "std_divisor": "population for size stats; sample inside standard error",
        "datasets": {},
    }
    report["size_stats"] = [asdict(r) for r in size_stats(graphs_by_dataset)]
    for dataset in sorted(graphs_by_dataset):
        stat_variant, graphs = _one_variant_per_file(graphs_by_dataset[dataset])
        entry: dict = {"statistics_variant": stat_variant}
        entry["category_distribution"] = category_distribution(graphs)
        m_graphs = [g for g in graphs_by_dataset[dataset] if g.variant == "relsc_m"]
        if m_graphs:
            entry["mean_relation_matrix"] = mean_relation_matrix(m_graphs).tolist()
        metrics = [structural_metrics(g) for g in graphs]
        entry["structural_metrics"] = _aggregate_metrics(metrics)
        entry["degree_histogram"] = degree_histogram(graphs)
        labelled = [g for g in graphs if g.target is not None]
        if labelled:
            entry["target_histogram"] = target_histogram(labelled, bins)
            share = low_target_share(labelled)
            entry["low_target_share"] = {
                "threshold": LOW_TARGET_THRESHOLD,
                "share": share,
                "skewed": share >= 0.5,
            }
        report["datasets"][dataset] = entry
    return report


def _aggregate_metrics(metrics: Sequence[StructuralMetrics]) -> dict:
    out = {}
    for name in ("density", "avg_degree", "clustering", "diameter", "avg_path_length", "assortativity"):
        values = [getattr(m, name) for m in metrics]
        values = [v for v in values if v is not None]
        if not values:
            out[name] = {"mean": None, "std": None}
        else:
            arr = np.array(values, dtype=float)
            out[name] = {"mean": float(arr.mean()), "std": float(arr.std())}
    return out


def write_report(report: dict, out_path: str | Path, fmt: str = "json") -> None:
    """Write the report as one JSON file or a directory of CSVs."""
    out_path = Path(out_path)
    if fmt == "json":
        out_path.write_text(json.dumps(report, indent=1, sort_keys=True), encoding="utf-8")
        return
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    out_path.mkdir(parents=True, exist_ok=True)
    with open(out_path / "size_stats.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["dataset", "variant", "count", "nodes_mean", "nodes_std", "nodes_min",
             "nodes_max", "edges_mean", "edges_std", "edges_min", "edges_max"]
        )
        for row in report["size_stats"]:
            writer.writerow([row[k] for k in
                             ("dataset", "variant", "count", "nodes_mean", "nodes_std",
                              "nodes_min", "nodes_max", "edges_mean", "edges_std",
                              "edges_min", "edges_max")])
    for dataset, entry in report["datasets"].items():
        prefix = dataset.replace("/", "_")
        with open(out_path / f"{prefix}_categories.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["category", "mean_count", "standard_error"])
            for row in entry["category_distribution"]:
                writer.writerow([row["category"], row["mean_count"], row["standard_error"]])
        with open(out_path / f"{prefix}_degree_histogram.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["degree", "count"])
            writer.writerows(entry["degree_histogram"])
        if "mean_relation_matrix" in entry:
            with open(out_path / f"{prefix}_relations.csv", "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["src_category"] + list(CATEGORY_NAMES))
                for i, row in enumerate(entry["mean_relation_matrix"]):
                    writer.writerow([CATEGORY_NAMES[i]] + row)
        if "target_histogram" in entry:
            with open(out_path / f"{prefix}_targets.csv", "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["bin", "count"])
                writer.writerows(enumerate(entry["target_histogram"]))
