"""Parse a Java snippet into a typed AST and look around.

Every node carries one of the 72 canonical node types; names, literal
text and operators are node attributes, so the tree stays compact.
"""

from relsc import parse_source, strip_comments

SOURCE = """\
public class Counter {
    private int hits; // how many times we were poked

    /* Increment and report. */
    public int poke(int amount) {
        if (amount > 0) {
            hits += amount;
        }
        return hits;
    }
}
"""

print("== comment stripping keeps line/column numbering ==")
print(strip_comments(SOURCE))

unit = parse_source(SOURCE, "Counter.java")
print(f"parsed {unit.node_count} nodes from {unit.path}")

print("\n== pre-order walk ==")
for node in unit.nodes:
    label = node.attrs.get("name") or node.attrs.get("value") or node.attrs.get("member") or ""
    depth = 0
    p = unit.parents[node.id]
    while p >= 0:
        depth += 1
        p = unit.parents[p]
    print(f"{'  ' * depth}{node.node_type.name} {label}")

print("\n== leaves in source order reproduce token order ==")
print([n.node_type.name for n in unit.leaves_in_source_order()])

print("\n== machine-readable dump (one JSON document per file) ==")
print(unit.to_debug_json()[:200], "...")
