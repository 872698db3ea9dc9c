"""relsc: Java source to program-graph datasets for execution-time regression.

Pipeline: strip_comments -> parse_java -> build_relsc_h -> build_relsc_m,
with dataset plumbing (labels, normalization, splits, JSONL serialization)
and corpus statistics on top.
"""

from .graphs import (
    Edge,
    EdgeType,
    FeatureVector,
    GraphNode,
    ProgramGraph,
    VariantError,
    all_edge_types,
    build_ast_graph,
    build_relsc_h,
    compute_features,
    add_control_flow,
    add_next_sibling,
    add_next_token,
    add_next_use,
    orient_ast,
    FEATURE_DIM,
)
from .lexing import JavaSyntaxError, strip_comments, tokenize
from .parsing import AstNode, SourceUnit, parse_java, parse_source
from .relational import (
    NUM_RELATIONS,
    RelationId,
    RelationalEdge,
    build_relsc_m,
    relation_histogram,
)
from .datasets import (
    DatasetManifest,
    LabelRecord,
    NormalizationParams,
    PipelineConfig,
    SplitAssignment,
    deserialize_graph,
    ingest_labels,
    make_splits,
    normalize_targets,
    read_graphs_jsonl,
    run_pipeline,
    serialize_graph,
)
from .taxonomy import (
    Category,
    NodeType,
    all_categories,
    all_node_types,
    canonical_taxonomy,
    categorize,
    node_type,
)

__version__ = "0.1.0"

__all__ = [
    "AstNode", "Category", "DatasetManifest", "Edge", "EdgeType",
    "FeatureVector", "FEATURE_DIM", "GraphNode", "JavaSyntaxError",
    "LabelRecord", "NormalizationParams", "NodeType", "NUM_RELATIONS",
    "PipelineConfig", "ProgramGraph", "RelationId", "RelationalEdge",
    "SourceUnit", "SplitAssignment", "VariantError", "all_categories",
    "all_edge_types", "all_node_types", "build_ast_graph", "build_relsc_h",
    "build_relsc_m", "canonical_taxonomy", "categorize", "compute_features",
    "add_control_flow", "add_next_sibling", "add_next_token", "add_next_use",
    "deserialize_graph", "ingest_labels", "make_splits", "node_type",
    "normalize_targets", "orient_ast", "parse_java", "parse_source",
    "read_graphs_jsonl", "relation_histogram", "run_pipeline",
    "serialize_graph", "strip_comments", "tokenize",
]
