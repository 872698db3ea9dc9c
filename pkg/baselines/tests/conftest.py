import json
import random

import pytest
import torch

from relsc_baselines.data import GraphSample


def random_homogeneous(n, rng, gid="g", target=None, p=0.3):
    """Random DAG-ish graph with builder-style features (type one-hot +
    out-degree count in the first edge slot)."""
    src, dst = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                src.append(i)
                dst.append(j)
    x = torch.zeros(n, 83)
    for i in range(n):
        x[i, rng.randrange(72)] = 1.0
    for s in src:
        x[s, 72] += 1.0
    ei = torch.tensor([src, dst], dtype=torch.int64) if src else torch.zeros((2, 0), dtype=torch.int64)
    return GraphSample(gid, x, ei, target if target is not None else n / 50.0)


def random_relational(n, rng, gid="g", num_relations=4, target=0.5):
    sample = random_homogeneous(n, rng, gid, target)
    e = sample.edge_index.shape[1]
    relations = torch.tensor([rng.randrange(num_relations) for _ in range(e)], dtype=torch.int64)
    sample.edge_relation = relations
    return sample


@pytest.fixture
def rng():
    return random.Random(1234)


def sample_to_record(sample: GraphSample, variant="relsc_h") -> dict:
    nodes = [
        {"id": i, "type": "Literal", "category": "literals_and_constants",
         "feature": [int(v) for v in sample.x[i].tolist()]}
        for i in range(sample.num_nodes)
    ]
    edges = []
    for k in range(sample.edge_index.shape[1]):
        e = {"src": int(sample.edge_index[0, k]), "dst": int(sample.edge_index[1, k]),
             "edge_type": "ast"}
        if sample.edge_relation is not None:
            e["relation"] = int(sample.edge_relation[k])
            e["inverse"] = False
        edges.append(e)
    return {
        "id": sample.graph_id, "variant": variant, "provenance": sample.graph_id,
        "target": sample.target, "nodes": nodes, "edges": edges,
    }


def write_corpus(tmp_path, samples, splits, variant="relsc_h", filename="graphs_h.jsonl"):
    """Emit schema-conformant JSONL + splits.csv for loader tests."""
    with open(tmp_path / filename, "w") as fh:
        for s in samples:
            fh.write(json.dumps(sample_to_record(s, variant)) + "\n")
    with open(tmp_path / "splits.csv", "w") as fh:
        fh.write("graph_id,dataset,project,split\n")
        for s, split in zip(samples, splits):
            fh.write(f"{s.graph_id},d,p,{split}\n")
