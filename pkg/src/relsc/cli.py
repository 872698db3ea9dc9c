"""Command line entry points: build, split, stats, inspect.

Exit codes: 0 success, 1 zero-graph failure, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import datasets, stats
from .datasets import (
    GRAPH_FILES,
    DatasetManifest,
    PipelineConfig,
    make_splits,
    read_graphs_jsonl,
    run_pipeline,
    write_splits_csv,
)

_VARIANT_FLAGS = {"ast": ("ast_only",), "h": ("relsc_h",), "m": ("relsc_h", "relsc_m"),
                  "all": ("ast_only", "relsc_h", "relsc_m")}


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("ratios must be three comma-separated numbers")
    return parts[0], parts[1], parts[2]


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relsc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="parse a corpus and serialize graph datasets")
    b.add_argument("--input", action="append", required=True, metavar="DIR",
                   help="dataset root (repeatable; dir name = dataset name)")
    b.add_argument("--labels", metavar="CSV", help="labels file: path,seconds[,runs]")
    b.add_argument("--variant", choices=sorted(_VARIANT_FLAGS), default="h")
    b.add_argument("--out", required=True, metavar="DIR")
    b.add_argument("--add-inverse", dest="add_inverse", action="store_true", default=True)
    b.add_argument("--no-add-inverse", dest="add_inverse", action="store_false")
    b.add_argument("--exclude-interfaces", action="store_true")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--ratios", type=_parse_ratios, default=(0.70, 0.15, 0.15))
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--dump-ast", metavar="DIR", help="also write one AST debug JSON per file")

    s = sub.add_parser("split", help="regenerate split assignments for a built corpus")
    s.add_argument("--graphs", required=True, metavar="DIR", help="build output directory")
    s.add_argument("--ratios", type=_parse_ratios, default=(0.70, 0.15, 0.15))
    s.add_argument("--seed", type=int, default=0)

    st = sub.add_parser("stats", help="compute corpus statistics")
    st.add_argument("--graphs", required=True, metavar="DIR", help="build output directory")
    st.add_argument("--report", choices=("csv", "json"), default="json")
    st.add_argument("--out", metavar="PATH", help="report file (json) or directory (csv)")
    st.add_argument("--bins", type=int, default=20)

    i = sub.add_parser("inspect", help="dump one graph in readable form")
    i.add_argument("graph_id")
    i.add_argument("--graphs", required=True, metavar="DIR", help="build output directory")
    return ap


def _load_manifest(graphs_dir: Path) -> DatasetManifest:
    manifest_path = graphs_dir / "manifest.json"
    if not manifest_path.exists():
        raise FileNotFoundError(f"no manifest.json under {graphs_dir}")
    return DatasetManifest.from_json(manifest_path.read_text(encoding="utf-8"))


def _load_all_graphs(graphs_dir: Path) -> dict[str, list]:
    out = {}
    for variant, filename in GRAPH_FILES.items():
        path = graphs_dir / filename
        if path.exists():
            out[variant] = read_graphs_jsonl(path)
    return out


def cmd_build(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        input_roots=args.input,
        out_dir=args.out,
        labels_csv=args.labels,
        variants=_VARIANT_FLAGS[args.variant],
        seed=args.seed,
        add_inverse=args.add_inverse,
        exclude_interfaces=args.exclude_interfaces,
        ratios=args.ratios,
        workers=args.workers,
        dump_ast_dir=args.dump_ast,
    )
    try:
        manifest = run_pipeline(config)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    n = sum(d["counts"]["graphs"] for d in manifest.datasets)
    print(f"built {n} graphs into {args.out} ({len(manifest.rejected)} rejected/warnings)")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    graphs_dir = Path(args.graphs)
    manifest = _load_manifest(graphs_dir)
    triples = [(g["id"], g["dataset"], g["project"]) for g in manifest.graphs]
    assignments = make_splits(triples, ratios=args.ratios, seed=args.seed)
    write_splits_csv(assignments, graphs_dir / "splits.csv")
    sizes = {s: sum(1 for a in assignments if a.split == s) for s in ("train", "val", "test")}
    print(f"wrote splits.csv: {sizes}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    graphs_dir = Path(args.graphs)
    manifest = _load_manifest(graphs_dir)
    dataset_of = {g["id"]: g["dataset"] for g in manifest.graphs}
    by_dataset: dict[str, list] = {}
    for variant_graphs in _load_all_graphs(graphs_dir).values():
        for g in variant_graphs:
            by_dataset.setdefault(dataset_of.get(g.provenance, "unknown"), []).append(g)
    if not by_dataset:
        print("error: no graph files found", file=sys.stderr)
        return 1
    report = stats.corpus_report(by_dataset, bins=args.bins)
    out = args.out or (str(graphs_dir / "stats.json") if args.report == "json" else str(graphs_dir / "stats"))
    stats.write_report(report, out, fmt=args.report)
    print(f"wrote {args.report} report to {out}")
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    graphs_dir = Path(args.graphs)
    found = False
    for variant, graphs in _load_all_graphs(graphs_dir).items():
        for g in graphs:
            if g.provenance == args.graph_id:
                found = True
                print(f"graph {args.graph_id} [{variant}]")
                print(f"  nodes: {g.num_nodes}  edges: {g.num_edges}  target: {g.target}")
                for name, count in sorted(g.edge_type_counts().items()):
                    if count:
                        print(f"  {name}: {count}")
    if not found:
        print(f"error: graph id {args.graph_id!r} not found", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    handler = {
        "build": cmd_build,
        "split": cmd_split,
        "stats": cmd_stats,
        "inspect": cmd_inspect,
    }[args.command]
    try:
        return handler(args)
    except (ValueError, FileNotFoundError, datasets.LabelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
