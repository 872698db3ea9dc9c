"""Flow-augmented program graphs built from parsed source units.

The homogeneous graph keeps the AST (oriented parent to child) and adds
ten flow/sequence edge types; node features concatenate a 72-way type
one-hot with per-type outgoing-edge counts (11), total length 83.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .parsing import AstNode, SourceUnit
from .taxonomy import NUM_NODE_TYPES, NodeType

EDGE_TYPE_NAMES: tuple[str, ...] = (
    "ast",
    "next_token",
    "next_sibling",
    "next_use",
    "if_flow",
    "else_flow",
    "while_exec",
    "while_next",
    "for_exec",
    "for_next",
    "next_stmt",
)

NUM_EDGE_TYPES = len(EDGE_TYPE_NAMES)
FEATURE_DIM = NUM_NODE_TYPES + NUM_EDGE_TYPES  # 83

VARIANTS = ("ast_only", "relsc_h", "relsc_m")


@dataclass(frozen=True)
class EdgeType:
    name: str
    ordinal: int


_EDGE_TYPES = tuple(EdgeType(n, i) for i, n in enumerate(EDGE_TYPE_NAMES))
_EDGE_BY_NAME = {t.name: t for t in _EDGE_TYPES}


def edge_type(name: str) -> EdgeType:
    return _EDGE_BY_NAME[name]


def all_edge_types() -> tuple[EdgeType, ...]:
    return _EDGE_TYPES


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    edge_type: EdgeType


@dataclass(frozen=True)
class FeatureVector:
    """Type one-hot (72) concatenated with outgoing-edge counts (11)."""

    type_part: tuple[int, ...]
    edge_part: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.type_part) != NUM_NODE_TYPES or len(self.edge_part) != NUM_EDGE_TYPES:
            raise ValueError("bad feature vector shape")

    def concat(self) -> tuple[int, ...]:
        return self.type_part + self.edge_part

    def __len__(self) -> int:
        return FEATURE_DIM


@dataclass(frozen=True)
class GraphNode:
    id: int
    node_type: NodeType
    feature: FeatureVector | None = None


class VariantError(ValueError):
    """An operation received a graph of the wrong variant."""


@dataclass(frozen=True)
class ProgramGraph:
    """Directed multigraph over AST nodes, one regression target per graph.

    `unit` is construction-time context (needed by augmentation passes);
    it is dropped by serialization and excluded from equality.
    """

    variant: str
    nodes: tuple[GraphNode, ...]
    edges: tuple  # Edge for ast_only / relsc_h, RelationalEdge for relsc_m
    provenance: str
    target: float | None = None
    unit: SourceUnit | None = field(default=None, compare=False, repr=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_type_counts(self) -> dict[str, int]:
        counts = {name: 0 for name in EDGE_TYPE_NAMES}
        for e in self.edges:
            name = e.edge_type.name if isinstance(e, Edge) else e.origin_edge_type.name
            counts[name] += 1
        return counts

    def validate(self) -> None:
        ids = {n.id for n in self.nodes}
        for e in self.edges:
            if e.src not in ids or e.dst not in ids:
                raise ValueError(f"edge endpoint outside node set: {e}")
            if e.src == e.dst:
                raise ValueError(f"self-loop not allowed: {e}")
        if self.variant == "ast_only":
            for e in self.edges:
                if e.edge_type.name != "ast":
                    raise ValueError("ast_only graph carries a non-ast edge")


def _require_unit(g: ProgramGraph) -> SourceUnit:
    if g.unit is None:
        raise VariantError("graph lost its source unit; augmentation passes need it")
    return g.unit


def orient_ast(unit: SourceUnit) -> ProgramGraph:
    """AST as a directed graph, one parent-to-child edge per tree edge."""
    ast = edge_type("ast")
    nodes = tuple(GraphNode(n.id, n.node_type) for n in unit.nodes)
    edges = tuple(
        Edge(n.id, child, ast) for n in unit.nodes for child in n.children
    )
    return ProgramGraph("ast_only", nodes, edges, unit.path, unit=unit)


def add_next_token(g: ProgramGraph) -> ProgramGraph:
    """Chain leaves in source order."""
    unit = _require_unit(g)
    et = edge_type("next_token")
    leaves = unit.leaves_in_source_order()
    new = tuple(Edge(a.id, b.id, et) for a, b in zip(leaves, leaves[1:]))
    return replace(g, edges=g.edges + new)


def add_next_sibling(g: ProgramGraph) -> ProgramGraph:
    """Chain each node's ordered children."""
    unit = _require_unit(g)
    et = edge_type("next_sibling")
    new = []
    for n in unit.nodes:
        for a, b in zip(n.children, n.children[1:]):
            new.append(Edge(a, b, et))
    return replace(g, edges=g.edges + tuple(new))


_DECLARATOR_TYPES = {
    "VariableDeclarator",
    "FormalParameter",
    "InferredFormalParameter",
    "CatchClauseParameter",
    "TryResource",
}
_METHOD_SCOPE_TYPES = {"MethodDeclaration", "ConstructorDeclaration"}


def _occurrence_name(node: AstNode) -> str | None:
    tname = node.node_type.name
    if tname in _DECLARATOR_TYPES:
        return node.attrs.get("name")
    if tname == "MemberReference":
        if node.attrs.get("qualifier") or node.attrs.get("selector"):
            return None
        return node.attrs.get("member")
    return None


def add_next_use(g: ProgramGraph) -> ProgramGraph:
    """Chain lexical occurrences of each simple variable name per method."""
    unit = _require_unit(g)
    et = edge_type("next_use")

    scope_of: list[int] = [-1] * unit.node_count
    for n in unit.nodes:
        parent = unit.parents[n.id]
        if parent < 0:
            scope_of[n.id] = n.id
        elif unit.nodes[parent].node_type.name in _METHOD_SCOPE_TYPES:
            scope_of[n.id] = parent
        else:
            scope_of[n.id] = scope_of[parent]

    chains: dict[tuple[int, str], list[AstNode]] = {}
    for n in unit.nodes:
        name = _occurrence_name(n)
        if name:
            chains.setdefault((scope_of[n.id], name), []).append(n)

    new = []
    for occurrences in chains.values():
        occurrences.sort(key=lambda n: n.source_order)
        for a, b in zip(occurrences, occurrences[1:]):
            new.append(Edge(a.id, b.id, et))
    new.sort(key=lambda e: (e.src, e.dst))
    return replace(g, edges=g.edges + tuple(new))


_STATEMENT_TYPES = {
    "IfStatement", "WhileStatement", "DoStatement", "ForStatement",
    "SwitchStatement", "TryStatement", "ReturnStatement", "ThrowStatement",
    "BreakStatement", "ContinueStatement", "AssertStatement",
    "SynchronizedStatement", "BlockStatement", "Statement",
    "StatementExpression", "LocalVariableDeclaration",
}


def _last_statement(unit: SourceUnit, body_id: int) -> int | None:
    body = unit.nodes[body_id]
    if body.node_type.name == "BlockStatement":
        return body.children[-1] if body.children else None
    return body_id


def add_control_flow(g: ProgramGraph) -> ProgramGraph:
    """Branch and loop edges plus statement sequencing inside blocks."""
    unit = _require_unit(g)
    new: list[Edge] = []
    notes: list[str] = []

    def emit(name: str, src: int, dst: int) -> None:
        new.append(Edge(src, dst, edge_type(name)))

    for n in unit.nodes:
        tname = n.node_type.name
        if tname == "IfStatement":
            cond, then = n.children[0], n.children[1]
            emit("if_flow", cond, then)
            if len(n.children) == 3:
                emit("else_flow", cond, n.children[2])
        elif tname == "WhileStatement":
            cond, body = n.children
            emit("while_exec", cond, body)
            last = _last_statement(unit, body)
            if last is None:
                notes.append(f"empty while body at node {n.id}: no while_next edge")
            else:
                emit("while_next", last, cond)
        elif tname == "ForStatement":
            control, body = n.children
            cond = _for_condition(unit, control)
            emit("for_exec", cond, body)
            last = _last_statement(unit, body)
            if last is None:
                notes.append(f"empty for body at node {n.id}: no for_next edge")
            else:
                emit("for_next", last, cond)
        elif tname == "BlockStatement":
            for a, b in zip(n.children, n.children[1:]):
                emit("next_stmt", a, b)
        elif tname == "SwitchStatementCase":
            stmts = [
                c for c in n.children
                if unit.nodes[c].node_type.name in _STATEMENT_TYPES
            ]
            for a, b in zip(stmts, stmts[1:]):
                emit("next_stmt", a, b)
    return replace(g, edges=g.edges + tuple(new), notes=g.notes + tuple(notes))


def _for_condition(unit: SourceUnit, control_id: int) -> int:
    control = unit.nodes[control_id]
    if control.node_type.name == "ForControl":
        idx = control.attrs.get("cond_index")
        if idx:
            return control.children[int(idx)]
        return control_id  # for(;;): the control node stands in
    return control_id  # enhanced for: the control node stands in


def compute_features(g: ProgramGraph) -> ProgramGraph:
    """Attach the 83-dim feature vector to every node."""
    counts = [[0] * NUM_EDGE_TYPES for _ in range(len(g.nodes))]
    for e in g.edges:
        et = e.edge_type if isinstance(e, Edge) else e.origin_edge_type
        counts[e.src][et.ordinal] += 1
    nodes = []
    for node in g.nodes:
        type_part = [0] * NUM_NODE_TYPES
        type_part[node.node_type.ordinal] = 1
        feature = FeatureVector(tuple(type_part), tuple(counts[node.id]))
        nodes.append(GraphNode(node.id, node.node_type, feature))
    return replace(g, nodes=tuple(nodes))


def build_ast_graph(unit: SourceUnit) -> ProgramGraph:
    """AST-only variant with features (the ablation representation)."""
    return compute_features(orient_ast(unit))


AUGMENTATION_PASSES = (
    add_next_token,
    add_next_sibling,
    add_next_use,
    add_control_flow,
)


def build_relsc_h(unit: SourceUnit, passes=AUGMENTATION_PASSES) -> ProgramGraph:
    """Full homogeneous graph: AST orientation, all edge passes, features.

    The edge multiset is independent of pass order; `passes` is exposed
    so tests can permute them.
    """
    g = orient_ast(unit)
    for p in passes:
        g = p(g)
    g = compute_features(replace(g, variant="relsc_h"))
    return g
