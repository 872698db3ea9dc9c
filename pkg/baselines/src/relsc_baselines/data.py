"""Readers for serialized program-graph corpora.

Consumes the pipeline's file contracts directly (JSONL graphs, JSON
manifest, splits CSV); nothing here depends on the builder package.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

FEATURE_DIM = 83
NUM_RELATIONS = 49

GRAPH_FILES = {"ast_only": "graphs_ast.jsonl", "relsc_h": "graphs_h.jsonl", "relsc_m": "graphs_m.jsonl"}


@dataclass
class GraphSample:
    """One graph: features, directed edges, optional relations, target."""

    graph_id: str
    x: torch.Tensor  # [n, 83] float32
    edge_index: torch.Tensor  # [2, E] int64, messages flow src -> dst
    target: float | None
    edge_relation: torch.Tensor | None = None  # [E] int64 for relsc_m

    @property
    def num_nodes(self) -> int:
        return self.x.shape[0]


def sample_from_record(rec: dict) -> GraphSample:
    nodes = rec["nodes"]
    x = np.zeros((len(nodes), FEATURE_DIM), dtype=np.float32)
    for n in nodes:
        x[n["id"]] = n["feature"]
    edges = rec["edges"]
    if edges:
        src = [e["src"] for e in edges]
        dst = [e["dst"] for e in edges]
        edge_index = torch.tensor([src, dst], dtype=torch.int64)
    else:
        edge_index = torch.zeros((2, 0), dtype=torch.int64)
    relation = None
    if edges and "relation" in edges[0]:
        relation = torch.tensor([e["relation"] for e in edges], dtype=torch.int64)
    return GraphSample(rec["id"], torch.from_numpy(x), edge_index, rec.get("target"), relation)


def load_graphs(path: str | Path) -> list[GraphSample]:
    samples = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                samples.append(sample_from_record(json.loads(line)))
    return samples


def load_splits(path: str | Path) -> dict[str, str]:
    """graph_id -> train|val|test."""
    with open(path, newline="", encoding="utf-8") as fh:
        return {row["graph_id"]: row["split"] for row in csv.DictReader(fh)}


def load_corpus(
    build_dir: str | Path, variant: str = "relsc_h"
) -> tuple[list[GraphSample], list[GraphSample], list[GraphSample]]:
    """Load one variant of a built corpus, partitioned by the split file."""
    build_dir = Path(build_dir)
    samples = load_graphs(build_dir / GRAPH_FILES[variant])
    split_of = load_splits(build_dir / "splits.csv")
    parts: dict[str, list[GraphSample]] = {"train": [], "val": [], "test": []}
    for s in samples:
        split = split_of.get(s.graph_id)
        if split in parts:
            parts[split].append(s)
    return parts["train"], parts["val"], parts["test"]


@dataclass
class Batch:
    """Block-diagonal concatenation of several graphs."""

    x: torch.Tensor  # [N, F]
    edge_index: torch.Tensor  # [2, E]
    graph_index: torch.Tensor  # [N] which graph each node belongs to
    num_graphs: int
    targets: torch.Tensor  # [B]
    edge_relation: torch.Tensor | None = None


def collate(samples: list[GraphSample]) -> Batch:
    xs, edges, relations, graph_idx, targets = [], [], [], [], []
    offset = 0
    for i, s in enumerate(samples):
        xs.append(s.x)
        edges.append(s.edge_index + offset)
        if s.edge_relation is not None:
            relations.append(s.edge_relation)
        graph_idx.append(torch.full((s.num_nodes,), i, dtype=torch.int64))
        targets.append(float("nan") if s.target is None else s.target)
        offset += s.num_nodes
    return Batch(
        x=torch.cat(xs),
        edge_index=torch.cat(edges, dim=1),
        graph_index=torch.cat(graph_idx),
        num_graphs=len(samples),
        targets=torch.tensor(targets, dtype=torch.float32),
        edge_relation=torch.cat(relations) if relations else None,
    )
