"""Corpus orchestration: labels, targets, splits, serialization, pipeline.

File contracts (consumed by external tooling, keep stable):
  - labels CSV: header ``path,seconds[,runs]``
  - graphs: JSON Lines, one graph per line (see serialize_graph)
  - manifest.json: datasets, normalization, per-graph index, rejects
  - splits.csv: ``graph_id,dataset,project,split``
"""

from __future__ import annotations

import csv
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from .graphs import (
    Edge,
    FeatureVector,
    GraphNode,
    ProgramGraph,
    VARIANTS,
    build_ast_graph,
    build_relsc_h,
    edge_type,
)
from .lexing import JavaSyntaxError, strip_comments
from .parsing import parse_java
from .relational import RelationalEdge, build_relsc_m, relation_from_id
from .taxonomy import categorize, node_type

TOOL_VERSION = "0.1.0"

GRAPH_FILES = {"ast_only": "graphs_ast.jsonl", "relsc_h": "graphs_h.jsonl", "relsc_m": "graphs_m.jsonl"}
SPLIT_NAMES = ("train", "val", "test")


class LabelError(ValueError):
    """A label row is unusable (bad number, bad sign, bad header)."""


@dataclass(frozen=True)
class LabelRecord:
    path: str
    raw_seconds: float
    runs: int = 1


@dataclass(frozen=True)
class NormalizationParams:
    dataset_name: str
    min_seconds: float
    max_seconds: float

    def normalize(self, x: float) -> float:
        t = (x - self.min_seconds) / (self.max_seconds - self.min_seconds)
        return min(1.0, max(0.0, t))

    def denormalize(self, t: float) -> float:
        return self.min_seconds + t * (self.max_seconds - self.min_seconds)


@dataclass(frozen=True)
class SplitAssignment:
    graph_id: str
    split: str
    project: str
    dataset: str = ""


@dataclass
class DatasetManifest:
    datasets: list[dict]
    graphs: list[dict]
    rejected: list[dict]
    seed: int
    tool_version: str = TOOL_VERSION
    created_at: str = ""

    def to_json(self) -> str:
        doc = {
            "tool_version": self.tool_version,
            "created_at": self.created_at,
            "seed": self.seed,
            "normalization_scheme": "min-max",
            "label_aggregation": "mean",
            "datasets": self.datasets,
            "graphs": self.graphs,
            "rejected": self.rejected,
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @staticmethod
    def from_json(text: str) -> "DatasetManifest":
        doc = json.loads(text)
        return DatasetManifest(
            datasets=doc["datasets"],
            graphs=doc["graphs"],
            rejected=doc["rejected"],
            seed=doc["seed"],
            tool_version=doc["tool_version"],
            created_at=doc["created_at"],
        )


def ingest_labels(csv_path: str | Path, root: str | Path | None = None) -> tuple[list[LabelRecord], list[str]]:
    """Read a labels CSV; repeated rows per path are averaged.

    Returns (records, warnings). Rows with non-numeric or non-positive
    seconds raise LabelError with the offending line number. A path
    missing on disk (when `root` is given) only warns.
    """
    warnings: list[str] = []
    by_path: dict[str, list[tuple[float, int]]] = {}
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["path", "seconds"]:
            raise LabelError(f"{csv_path}: expected header 'path,seconds[,runs]'")
        has_runs = len(header) > 2 and header[2].strip() == "runs"
        for lineno, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            path = row[0].strip()
            try:
                seconds = float(row[1])
            except (ValueError, IndexError):
                raise LabelError(f"{csv_path}:{lineno}: bad seconds value {row[1:2]!r}") from None
            if seconds <= 0:
                raise LabelError(f"{csv_path}:{lineno}: seconds must be positive, got {seconds}")
            runs = 1
            if has_runs and len(row) > 2 and row[2].strip():
                try:
                    runs = int(row[2])
                except ValueError:
                    raise LabelError(f"{csv_path}:{lineno}: bad runs value {row[2]!r}") from None
            by_path.setdefault(path, []).append((seconds, runs))
    records = []
    for path in sorted(by_path):
        rows = by_path[path]
        mean = sum(s for s, _ in rows) / len(rows)
        records.append(LabelRecord(path, mean, sum(r for _, r in rows)))
        if root is not None and not (Path(root) / path).exists():
            warnings.append(f"labelled file missing on disk: {path}")
    return records, warnings


def normalize_targets(
    records: Sequence[LabelRecord],
    params: NormalizationParams | None = None,
    dataset_name: str = "",
) -> tuple[list[float], NormalizationParams]:
    """Min-max scale raw seconds into [0, 1], per dataset.

    Without `params` the scale is fitted (requires >= 2 distinct values);
    with `params` (inference mode) values are scaled then clamped.
    """
    values = [r.raw_seconds for r in records]
    if params is None:
        lo, hi = min(values), max(values)
        if lo == hi:
            raise ValueError(f"degenerate target range for {dataset_name or 'dataset'}: all values equal {lo}")
        params = NormalizationParams(dataset_name, lo, hi)
    return [params.normalize(v) for v in values], params


def make_splits(
    graphs: Sequence[tuple[str, str, str]],
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
    seed: int = 0,
) -> list[SplitAssignment]:
    """Assign (graph_id, dataset, project) triples to train/val/test.

    Stratified per project with floor/floor/remainder-to-test sizing,
    then unioned, so each project's splits nest inside its dataset's.
    Deterministic for a fixed seed.
    """
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"split ratios must sum to 1, got {ratios}")
    by_project: dict[tuple[str, str], list[str]] = {}
    for graph_id, dataset, project in graphs:
        by_project.setdefault((dataset, project), []).append(graph_id)

    assignments: list[SplitAssignment] = []
    for (dataset, project) in sorted(by_project):
        ids = sorted(by_project[(dataset, project)])
        if len(ids) < 3:
            raise ValueError(
                f"project {project!r} in {dataset!r} has {len(ids)} graphs; "
                "need >= 3 to populate train/val/test"
            )
        rng = random.Random(f"{seed}:{dataset}:{project}")
        rng.shuffle(ids)
        n = len(ids)
        # floor, with a guard against float products landing a hair under
        # an exact integer (e.g. n * 0.15)
        n_train = int(n * ratios[0] + 1e-9)
        n_val = int(n * ratios[1] + 1e-9)
        for i, gid in enumerate(ids):
            split = "train" if i < n_train else "val" if i < n_train + n_val else "test"
            assignments.append(SplitAssignment(gid, split, project, dataset))
    assignments.sort(key=lambda a: (a.dataset, a.project, a.graph_id))
    return assignments


def write_splits_csv(assignments: Iterable[SplitAssignment], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["graph_id", "dataset", "project", "split"])
        for a in assignments:
            writer.writerow([a.graph_id, a.dataset, a.project, a.split])


def read_splits_csv(path: str | Path) -> list[SplitAssignment]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(SplitAssignment(row["graph_id"], row["split"], row["project"], row["dataset"]))
    return out


# -- graph (de)serialization -------------------------------------------------


def serialize_graph(g: ProgramGraph, graph_id: str | None = None) -> str:
    """One JSON-lines record; node order is the canonical pre-order."""
    if g.variant not in VARIANTS:
        raise ValueError(f"unknown variant {g.variant!r}")
    nodes = []
    for n in g.nodes:
        rec = {
            "id": n.id,
            "type": n.node_type.name,
            "category": categorize(n.node_type).name,
            "feature": list(n.feature.concat()) if n.feature else None,
        }
        nodes.append(rec)
    edges = []
    for e in g.edges:
        if isinstance(e, RelationalEdge):
            edges.append(
                {
                    "src": e.src, "dst": e.dst, "edge_type": e.origin_edge_type.name,
                    "relation": e.relation.id, "inverse": e.inverse,
                }
            )
        else:
            edges.append({"src": e.src, "dst": e.dst, "edge_type": e.edge_type.name})
    record = {
        "id": graph_id if graph_id is not None else g.provenance,
        "variant": g.variant,
        "provenance": g.provenance,
        "target": g.target,
        "nodes": nodes,
        "edges": edges,
    }
    return json.dumps(record, sort_keys=True)


def deserialize_graph(line: str) -> ProgramGraph:
    rec = json.loads(line)
    variant = rec["variant"]
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    nodes = []
    for n in rec["nodes"]:
        feature = None
        if n.get("feature") is not None:
            raw = n["feature"]
            feature = FeatureVector(tuple(raw[:72]), tuple(raw[72:]))
        nodes.append(GraphNode(n["id"], node_type(n["type"]), feature))
    edges: list = []
    for e in rec["edges"]:
        et = edge_type(e["edge_type"])
        if "relation" in e:
            edges.append(
                RelationalEdge(e["src"], e["dst"], relation_from_id(e["relation"]), et, e.get("inverse", False))
            )
        else:
            edges.append(Edge(e["src"], e["dst"], et))
    return ProgramGraph(variant, tuple(nodes), tuple(edges), rec["provenance"], rec["target"])


def read_graphs_jsonl(path: str | Path) -> list[ProgramGraph]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(deserialize_graph(line))
    return out


# -- pipeline -----------------------------------------------------------------


@dataclass
class PipelineConfig:
    """One corpus build: inputs, labels, variants, output, flags."""

    input_roots: list[str]
    out_dir: str
    labels_csv: str | None = None
    variants: tuple[str, ...] = ("relsc_h",)
    seed: int = 0
    add_inverse: bool = True
    exclude_interfaces: bool = False
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15)
    workers: int = 1
    dump_ast_dir: str | None = None  # one AST debug JSON per parsed file

    def __post_init__(self) -> None:
        bad = [v for v in self.variants if v not in VARIANTS]
        if bad:
            raise ValueError(f"unknown variants: {bad}")


@dataclass
class _FileResult:
    path: str  # relative, posix
    dataset: str
    project: str
    error: str | None = None
    interface_only: bool = False
    graphs: dict = field(default_factory=dict)  # variant -> ProgramGraph
    node_count: int = 0
    ast_dump: str | None = None


def _is_interface_only(unit) -> bool:
    root = unit.nodes[unit.root]
    decls = [
        unit.nodes[c].node_type.name
        for c in root.children
        if unit.nodes[c].node_type.name.endswith("Declaration")
        and unit.nodes[c].node_type.name
        in ("ClassDeclaration", "InterfaceDeclaration", "EnumDeclaration", "AnnotationDeclaration")
    ]
    return bool(decls) and all(d == "InterfaceDeclaration" for d in decls)


def _build_one(args: tuple) -> _FileResult:
    abs_path, rel_path, dataset, project, variants, add_inverse, exclude_interfaces, want_dump = args
    result = _FileResult(rel_path, dataset, project)
    try:
        text = Path(abs_path).read_text(encoding="utf-8")
        unit = parse_java(strip_comments(text, rel_path), rel_path)
    except (JavaSyntaxError, UnicodeDecodeError, OSError) as exc:
        result.error = str(exc)
        return result
    if exclude_interfaces and _is_interface_only(unit):
        result.interface_only = True
        return result
    result.node_count = unit.node_count
    if want_dump:
        result.ast_dump = unit.to_debug_json()
    h = build_relsc_h(unit)
    h = ProgramGraph(h.variant, h.nodes, h.edges, rel_path, unit=None, notes=h.notes)
    if "ast_only" in variants:
        a = build_ast_graph(unit)
        result.graphs["ast_only"] = ProgramGraph(a.variant, a.nodes, a.edges, rel_path)
    if "relsc_h" in variants:
        result.graphs["relsc_h"] = h
    if "relsc_m" in variants:
        result.graphs["relsc_m"] = build_relsc_m(h, add_inverse=add_inverse)
    return result


def _discover_files(roots: Sequence[str]) -> list[tuple[str, str, str, str]]:
    """Yield (abs_path, rel_path, dataset, project) for every .java file.

    Each root is one dataset; its first-level subdirectories are the
    projects (files directly under the root map to a project named
    after the dataset).
    """
    out = []
    for root in roots:
        rootp = Path(root)
        dataset = rootp.name
        for p in sorted(rootp.rglob("*.java")):
            rel = p.relative_to(rootp).as_posix()
            parts = rel.split("/")
            project = parts[0] if len(parts) > 1 else dataset
            out.append((str(p), f"{dataset}/{rel}", dataset, project))
    out.sort(key=lambda t: t[1])
    return out


def run_pipeline(config: PipelineConfig) -> DatasetManifest:
    """Parse, build, label, split, and serialize a corpus.

    Per-file failures are collected into the manifest's rejects; the run
    only fails outright when no graph could be built at all.
    """
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = _discover_files(config.input_roots)

    labels: dict[str, LabelRecord] = {}
    label_warnings: list[str] = []
    if config.labels_csv:
        records, label_warnings = ingest_labels(config.labels_csv)
        labels = {r.path: r for r in records}

    tasks = [
        (abs_path, rel, dataset, project, config.variants, config.add_inverse,
         config.exclude_interfaces, bool(config.dump_ast_dir))
        for abs_path, rel, dataset, project in files
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_build_one, tasks))
    else:
        results = [_build_one(t) for t in tasks]
    results.sort(key=lambda r: r.path)

    rejected = [{"path": r.path, "reason": r.error} for r in results if r.error]
    rejected += [
        {"path": r.path, "reason": "interface-only file excluded"}
        for r in results
        if r.interface_only
    ]
    built = [r for r in results if not r.error and not r.interface_only]

    def label_for(path: str) -> LabelRecord | None:
        # labels may be keyed with or without the dataset-name prefix
        return labels.get(path) or labels.get(path.split("/", 1)[-1])

    if labels:
        labelled = []
        for r in built:
            rec = label_for(r.path)
            if rec is None:
                rejected.append({"path": r.path, "reason": "no label row"})
            else:
                labelled.append((r, rec))
        built = [r for r, _ in labelled]
        by_dataset: dict[str, list[tuple[_FileResult, LabelRecord]]] = {}
        for r, rec in labelled:
            by_dataset.setdefault(r.dataset, []).append((r, rec))
        norms: dict[str, NormalizationParams] = {}
        for dataset, pairs in by_dataset.items():
            targets, params = normalize_targets([rec for _, rec in pairs], dataset_name=dataset)
            norms[dataset] = params
            for (r, _), t in zip(pairs, targets):
                for variant, g in r.graphs.items():
                    r.graphs[variant] = ProgramGraph(
                        g.variant, g.nodes, g.edges, g.provenance, target=t, notes=g.notes
                    )
    else:
        norms = {}

    if not built:
        raise RuntimeError("pipeline produced zero graphs")
    rejected.sort(key=lambda r: r["path"])

    for variant in config.variants:
        with open(out_dir / GRAPH_FILES[variant], "w", encoding="utf-8") as fh:
            for r in built:
                fh.write(serialize_graph(r.graphs[variant], graph_id=r.path) + "\n")

    if config.dump_ast_dir:
        dump_dir = Path(config.dump_ast_dir)
        dump_dir.mkdir(parents=True, exist_ok=True)
        for r in built:
            if r.ast_dump is not None:
                name = r.path.replace("/", "__") + ".json"
                (dump_dir / name).write_text(r.ast_dump, encoding="utf-8")

    assignments = make_splits(
        [(r.path, r.dataset, r.project) for r in built],
        ratios=config.ratios,
        seed=config.seed,
    )
    write_splits_csv(assignments, out_dir / "splits.csv")

    datasets_meta = []
    for dataset in sorted({r.dataset for r in built}):
        members = [r for r in built if r.dataset == dataset]
        meta = {
            "name": dataset,
            "projects": sorted({r.project for r in members}),
            "counts": {
                "graphs": len(members),
                "rejected": sum(1 for x in rejected if x["path"].startswith(dataset + "/")),
            },
            "normalization": None,
        }
        if dataset in norms:
            meta["normalization"] = {
                "min_seconds": norms[dataset].min_seconds,
                "max_seconds": norms[dataset].max_seconds,
            }
        datasets_meta.append(meta)

    graph_index = []
    for r in built:
        entry = {
            "id": r.path,
            "dataset": r.dataset,
            "project": r.project,
            "node_count": r.node_count,
            "variants": sorted(r.graphs),
            "edge_counts": {v: len(g.edges) for v, g in sorted(r.graphs.items())},
            "target": next(iter(r.graphs.values())).target,
        }
        rec = label_for(r.path)
        if rec is not None:
            entry["raw_seconds"] = rec.raw_seconds
            entry["runs"] = rec.runs
        graph_index.append(entry)

    manifest = DatasetManifest(
        datasets=datasets_meta,
        graphs=graph_index,
        rejected=rejected,
        seed=config.seed,
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    for w in label_warnings:
        manifest.rejected.append({"path": "", "reason": f"warning: {w}"})
    (out_dir / "manifest.json").write_text(manifest.to_json(), encoding="utf-8")

    from . import stats as stats_mod  # local import: stats pulls in networkx

    by_dataset: dict[str, list[ProgramGraph]] = {}
    for r in built:
        by_dataset.setdefault(r.dataset, []).extend(r.graphs.values())
    report = stats_mod.corpus_report(by_dataset)
    stats_mod.write_report(report, out_dir / "stats.json", fmt="json")
    return manifest
