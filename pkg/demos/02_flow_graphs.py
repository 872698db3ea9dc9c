"""Build the homogeneous flow-augmented graph and inspect its edges.

Starting from the oriented AST, four passes add sequence edges
(next_token, next_sibling), lexical data-flow chains (next_use) and
control-flow edges (if/else, while, for, next statement). Node features
are the 72-way type one-hot concatenated with outgoing-edge counts.
"""

from relsc import (
    add_control_flow,
    add_next_sibling,
    add_next_token,
    add_next_use,
    build_relsc_h,
    compute_features,
    orient_ast,
    parse_source,
)

SOURCE = """\
class Summer {
    int sum(int[] xs) {
        int total = 0;
        for (int x : xs) {
            if (x > 0) {
                total += x;
            } else {
                total -= x;
            }
        }
        while (total > 100) {
            total /= 2;
        }
        return total;
    }
}
"""

unit = parse_source(SOURCE, "Summer.java")

print("== one pass at a time ==")
g = orient_ast(unit)
print(f"ast edges: {g.num_edges} (= {g.num_nodes} nodes - 1)")
for step in (add_next_token, add_next_sibling, add_next_use, add_control_flow):
    g = step(g)
    print(f"after {step.__name__:18s}: {g.num_edges} edges")
g = compute_features(g)

print("\n== or all at once ==")
h = build_relsc_h(unit)
print({name: count for name, count in h.edge_type_counts().items() if count})

print("\n== features: type one-hot (72) + outgoing edge counts (11) ==")
loopy = max(h.nodes, key=lambda n: sum(n.feature.edge_part))
print(f"busiest node is a {loopy.node_type.name}")
print(f"edge_part = {list(loopy.feature.edge_part)}")
print(f"feature length = {len(loopy.feature.concat())}")
