import pytest

from relsc import parse_java, parse_source
from relsc.lexing import JavaSyntaxError
from relsc.taxonomy import all_node_types


def type_names(unit):
    return [n.node_type.name for n in unit.nodes]


def test_minimal_class_is_two_nodes():
    unit = parse_source("class A {}", "A.java")
    assert type_names(unit) == ["CompilationUnit", "ClassDeclaration"]


def test_local_variable_snippet_node_types():
    unit = parse_source("class A { void m(){ int x = 1; } }", "A.java")
    names = set(type_names(unit))
    assert {"LocalVariableDeclaration", "VariableDeclarator", "Literal"} <= names


def test_factorial_construct_counts(factorial_unit):
    names = type_names(factorial_unit)
    assert factorial_unit.nodes[factorial_unit.root].node_type.name == "CompilationUnit"
    assert names.count("MethodDeclaration") == 1
    assert names.count("IfStatement") == 1
    assert names.count("ReturnStatement") == 2


def test_every_node_type_is_canonical(snippet_units, factorial_unit):
    canonical = {t.name for t in all_node_types()}
    for unit in list(snippet_units) + [factorial_unit]:
        for n in unit.nodes:
            assert n.node_type.name in canonical


def test_parse_is_deterministic(snippet_units):
    from tests.conftest import SNIPPET_DIR

    for path in sorted(SNIPPET_DIR.glob("*.java"))[:5]:
        a = parse_source(path.read_text(), path.name)
        b = parse_source(path.read_text(), path.name)
        assert a.nodes == b.nodes


def test_tree_shape_is_sound(snippet_units):
    for unit in snippet_units:
        seen = set()
        stack = [unit.root]
        while stack:
            nid = stack.pop()
            assert nid not in seen, "cycle or shared child"
            seen.add(nid)
            stack.extend(unit.nodes[nid].children)
        assert seen == set(range(unit.node_count))
        for n in unit.nodes:
            for c in n.children:
                assert unit.parents[c] == n.id


def test_leaf_source_order_is_strict_total_order(snippet_units, factorial_unit):
    for unit in list(snippet_units) + [factorial_unit]:
        orders = [n.source_order for n in unit.nodes if n.is_leaf]
        assert len(set(orders)) == len(orders)


def test_leaves_follow_token_order(factorial_unit):
    # Leaves sorted by source_order must correspond to ascending token ranks.
    leaves = factorial_unit.leaves_in_source_order()
    assert all(a.source_order < b.source_order for a, b in zip(leaves, leaves[1:]))
    # The parameter's subtree leaf precedes the comparison literal's leaf.
    param = next(n for n in factorial_unit.nodes if n.node_type.name == "FormalParameter")
    literal_one = next(
        n for n in factorial_unit.nodes
        if n.node_type.name == "Literal" and n.attrs.get("value") == "1"
    )
    param_leaf = min(
        (factorial_unit.nodes[i] for i in factorial_unit.subtree_ids(param.id)
         if factorial_unit.nodes[i].is_leaf),
        key=lambda n: n.source_order,
    )
    assert param_leaf.source_order < literal_one.source_order


def test_leaf_source_order_points_at_own_token(snippet_units):
    # Leaves that carry literal text must start at exactly that token.
    from relsc import strip_comments, tokenize
    from tests.conftest import SNIPPET_DIR

    for path in sorted(SNIPPET_DIR.glob("*.java")):
        unit = parse_source(strip_comments(path.read_text()), path.name)
        tokens = tokenize(strip_comments(path.read_text()), path.name)
        for n in unit.nodes:
            if not n.is_leaf:
                continue
            tok = tokens[n.source_order]
            expected = (
                n.attrs.get("value")  # Literal / Modifier
                or n.attrs.get("name")  # BasicType / declarators
                or n.attrs.get("member")  # simple references
            )
            if expected and n.node_type.name in (
                "Literal", "Modifier", "BasicType", "MemberReference",
                "VariableDeclarator", "InferredFormalParameter",
            ):
                assert tok.text == expected, (path.name, n)


def test_bare_member_fallback_warns(factorial_unit):
    assert any("member sequence" in w for w in factorial_unit.parse_warnings)


def test_syntax_error_carries_location():
    with pytest.raises(JavaSyntaxError) as exc:
        parse_java("class A { void m( {} }", "Broken.java")
    assert "Broken.java" in str(exc.value)
    assert exc.value.line == 1


def test_invalid_file_raises():
    with pytest.raises(JavaSyntaxError):
        parse_java("this is not java at all ---", "NotJava.java")


def test_modifiers_become_nodes():
    unit = parse_source("public final class A {}", "A.java")
    mods = [n for n in unit.nodes if n.node_type.name == "Modifier"]
    assert [m.attrs["value"] for m in mods] == ["public", "final"]


def test_interface_constants_and_default_methods():
    unit = parse_source(
        "interface I { int K = 1; void m(); default int n() { return K; } }", "I.java"
    )
    names = type_names(unit)
    assert "ConstantDeclaration" in names
    assert names.count("MethodDeclaration") == 2


def test_empty_source_is_single_node():
    unit = parse_java("", "Empty.java")
    assert unit.node_count == 1
    assert unit.nodes[0].node_type.name == "CompilationUnit"


def test_debug_dump_round_trips_ids(factorial_unit):
    import json

    doc = json.loads(factorial_unit.to_debug_json())
    assert len(doc["nodes"]) == factorial_unit.node_count
    assert doc["nodes"][0]["type"] == "CompilationUnit"
    assert all("source_order" in n for n in doc["nodes"])
