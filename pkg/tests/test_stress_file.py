"""Regression pin for a wide-coverage Java 8 file: generics with bounds,
anonymous classes, enum constant bodies, inner-class creators, method
references, labelled jumps, switch fallthrough, try-with-resources with
multi-catch, initializer blocks, casts of lambdas, nested shifts."""

from pathlib import Path

from relsc import build_relsc_h, build_relsc_m, deserialize_graph, parse_source, serialize_graph

STRESS = Path(__file__).parent / "data" / "stress.java"


def test_stress_file_parses_without_warnings():
    unit = parse_source(STRESS.read_text(), "stress.java")
    assert unit.parse_warnings == ()
    assert unit.node_count == 486  # frozen: any grammar change must be deliberate


def test_stress_file_edge_counts_frozen():
    unit = parse_source(STRESS.read_text(), "stress.java")
    g = build_relsc_h(unit)
    g.validate()
    counts = {k: v for k, v in g.edge_type_counts().items() if v}
    assert counts == {
        "ast": 485,
        "next_token": 221,
        "next_sibling": 221,
        "next_use": 39,
        "if_flow": 3,
        "while_exec": 2,
        "while_next": 2,
        "for_exec": 3,
        "for_next": 3,
        "next_stmt": 20,
    }


def test_stress_file_round_trips_all_variants():
    unit = parse_source(STRESS.read_text(), "stress.java")
    h = build_relsc_h(unit)
    m = build_relsc_m(h)
    assert m.num_edges == 2 * h.num_edges
    for g in (h, m):
        assert deserialize_graph(serialize_graph(g)) == g
