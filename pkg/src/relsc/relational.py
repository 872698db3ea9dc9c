"""Multi-relational lift: edges typed by ordered endpoint-category pairs.

With 7 node categories there are at most 49 relations. Inverse edges
(on by default) double the edge count, which is what the published
corpus-level edge statistics reflect.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .graphs import Edge, EdgeType, ProgramGraph, VariantError
from .taxonomy import NUM_CATEGORIES, Category, all_categories, categorize

NUM_RELATIONS = NUM_CATEGORIES * NUM_CATEGORIES  # 49


@dataclass(frozen=True)
class RelationId:
    """Ordered (source category, target category) pair."""

    src_cat: Category
    dst_cat: Category

    @property
    def id(self) -> int:
        return self.src_cat.ordinal * NUM_CATEGORIES + self.dst_cat.ordinal

    @property
    def name(self) -> str:
        return f"{self.src_cat.name}->{self.dst_cat.name}"


def relation_from_id(rid: int) -> RelationId:
    if not 0 <= rid < NUM_RELATIONS:
        raise ValueError(f"relation id out of range: {rid}")
    cats = all_categories()
    return RelationId(cats[rid // NUM_CATEGORIES], cats[rid % NUM_CATEGORIES])


@dataclass(frozen=True)
class RelationalEdge:
    src: int
    dst: int
    relation: RelationId
    origin_edge_type: EdgeType
    inverse: bool = False


def build_relsc_m(g: ProgramGraph, add_inverse: bool = True) -> ProgramGraph:
    """Lift a homogeneous graph to the multi-relational variant.

    Nodes, features and target are untouched. Every edge is retyped by
    the category pair of its endpoints; with `add_inverse` each edge
    also emits its reversal (relation likewise reversed).
    """
    if g.variant != "relsc_h":
        raise VariantError(f"relational lift needs a relsc_h graph, got {g.variant!r}")
    cats = [categorize(n.node_type) for n in g.nodes]
    edges: list[RelationalEdge] = []
    for e in g.edges:
        assert isinstance(e, Edge)
        edges.append(
            RelationalEdge(e.src, e.dst, RelationId(cats[e.src], cats[e.dst]), e.edge_type)
        )
        if add_inverse:
            edges.append(
                RelationalEdge(
                    e.dst, e.src, RelationId(cats[e.dst], cats[e.src]),
                    e.edge_type, inverse=True,
                )
            )
    return replace(g, variant="relsc_m", edges=tuple(edges))


def relation_histogram(g: ProgramGraph) -> np.ndarray:
    """7x7 edge counts by (source category, target category)."""
    if g.variant != "relsc_m":
        raise VariantError(f"relation histogram needs a relsc_m graph, got {g.variant!r}")
    hist = np.zeros((NUM_CATEGORIES, NUM_CATEGORIES), dtype=np.int64)
    for e in g.edges:
        hist[e.relation.src_cat.ordinal, e.relation.dst_cat.ordinal] += 1
    return hist
