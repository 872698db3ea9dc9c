"""Canonical node-type taxonomy: 72 Java syntax node types in 7 categories.

The table is frozen data, not derived from any parser at runtime: the
frontend maps whatever it parses onto these names, and everything
downstream (features, categories, relations) keys off the ordinals
defined here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

CATEGORY_NAMES: tuple[str, ...] = (
    "declarations",
    "types_and_references",
    "control_flow",
    "expressions_and_operations",
    "code_structure",
    "exceptions",
    "literals_and_constants",
)

NUM_CATEGORIES = len(CATEGORY_NAMES)

# (node type, category), in table order. Exactly 72 rows; the duplicate
# CompilationUnit row of the source table is dropped (first occurrence wins).
_TAXONOMY_ROWS: tuple[tuple[str, str], ...] = (
    ("AnnotationMethod", "declarations"),
    ("InferredFormalParameter", "declarations"),
    ("LocalVariableDeclaration", "declarations"),
    ("SuperConstructorInvocation", "expressions_and_operations"),
    ("Import", "code_structure"),
    ("ArraySelector", "types_and_references"),
    ("BreakStatement", "control_flow"),
    ("FieldDeclaration", "declarations"),
    ("EnumDeclaration", "declarations"),
    ("ConstructorDeclaration", "declarations"),
    ("Annotation", "code_structure"),
    ("ReferenceType", "types_and_references"),
    ("EnhancedForControl", "control_flow"),
    ("TypeParameter", "declarations"),
    ("Statement", "control_flow"),
    ("CompilationUnit", "code_structure"),
    ("EnumConstantDeclaration", "literals_and_constants"),
    ("IfStatement", "control_flow"),
    ("ClassCreator", "code_structure"),
    ("SwitchStatement", "control_flow"),
    ("EnumBody", "code_structure"),
    ("PackageDeclaration", "code_structure"),
    ("Cast", "types_and_references"),
    ("VariableDeclaration", "declarations"),
    ("ArrayCreator", "types_and_references"),
    ("This", "types_and_references"),
    ("MethodReference", "expressions_and_operations"),
    ("InnerClassCreator", "code_structure"),
    ("InterfaceDeclaration", "declarations"),
    ("FormalParameter", "declarations"),
    ("CatchClauseParameter", "exceptions"),
    ("SynchronizedStatement", "control_flow"),
    ("VoidClassReference", "types_and_references"),
    ("TypeArgument", "types_and_references"),
    ("DoStatement", "control_flow"),
    ("Assignment", "expressions_and_operations"),
    ("ContinueStatement", "control_flow"),
    ("AssertStatement", "exceptions"),
    ("ExplicitConstructorInvocation", "declarations"),
    ("AnnotationDeclaration", "declarations"),
    ("StringLiteralExpr", "literals_and_constants"),
    ("PrimitiveType", "types_and_references"),
    ("TryStatement", "control_flow"),
    ("ElementArrayValue", "code_structure"),
    ("BlockStatement", "code_structure"),
    ("ClassReference", "types_and_references"),
    ("ReturnStatement", "control_flow"),
    ("IntegerLiteralExpr", "literals_and_constants"),
    ("TernaryExpression", "expressions_and_operations"),
    ("VariableDeclarator", "declarations"),
    ("BinaryOperation", "expressions_and_operations"),
    ("ClassDeclaration", "declarations"),
    ("TryResource", "exceptions"),
    ("MemberReference", "expressions_and_operations"),
    ("SuperMemberReference", "expressions_and_operations"),
    ("Literal", "literals_and_constants"),
    ("CatchClause", "exceptions"),
    ("WhileStatement", "control_flow"),
    ("ElementValuePair", "code_structure"),
    ("ForStatement", "control_flow"),
    ("StatementExpression", "expressions_and_operations"),
    ("ConstantDeclaration", "declarations"),
    ("ArrayInitializer", "types_and_references"),
    ("MethodInvocation", "expressions_and_operations"),
    ("Modifier", "declarations"),
    ("ThrowStatement", "control_flow"),
    ("LambdaExpression", "expressions_and_operations"),
    ("SwitchStatementCase", "code_structure"),
    ("MethodDeclaration", "declarations"),
    ("BasicType", "types_and_references"),
    ("SuperMethodInvocation", "expressions_and_operations"),
    ("ForControl", "control_flow"),
)

NUM_NODE_TYPES = len(_TAXONOMY_ROWS)
assert NUM_NODE_TYPES == 72


@dataclass(frozen=True)
class Category:
    """One of the 7 semantic node groups."""

    name: str
    ordinal: int

    def __post_init__(self) -> None:
        if CATEGORY_NAMES[self.ordinal] != self.name:
            raise ValueError(f"category ordinal mismatch: {self.name}")


@dataclass(frozen=True)
class NodeType:
    """A canonical syntax node type; ordinal fixes its one-hot position."""

    name: str
    ordinal: int


_NODE_TYPES: tuple[NodeType, ...] = tuple(
    NodeType(name, i) for i, (name, _) in enumerate(_TAXONOMY_ROWS)
)
_CATEGORIES: tuple[Category, ...] = tuple(
    Category(name, i) for i, name in enumerate(CATEGORY_NAMES)
)
_BY_NAME: dict[str, NodeType] = {t.name: t for t in _NODE_TYPES}
_CATEGORY_BY_NAME: dict[str, Category] = {c.name: c for c in _CATEGORIES}
_CATEGORY_OF: dict[str, Category] = {
    name: _CATEGORY_BY_NAME[cat] for name, cat in _TAXONOMY_ROWS
}


def node_type(name: str) -> NodeType:
    """Look up a canonical node type by name.

    Raises KeyError for names outside the taxonomy; the frontend treats
    that as an internal error, never user input.
    """
    return _BY_NAME[name]


def category(name: str) -> Category:
    return _CATEGORY_BY_NAME[name]


def categorize(nt: NodeType | str) -> Category:
    """Map a node type to its category. Total over the taxonomy."""
    name = nt if isinstance(nt, str) else nt.name
    return _CATEGORY_OF[name]


def all_node_types() -> tuple[NodeType, ...]:
    return _NODE_TYPES


def all_categories() -> tuple[Category, ...]:
    return _CATEGORIES


@lru_cache(maxsize=1)
def canonical_taxonomy() -> tuple[tuple[NodeType, Category], ...]:
    """The full deduplicated (node type, category) table, 72 rows."""
    return tuple((t, _CATEGORY_OF[t.name]) for t in _NODE_TYPES)
