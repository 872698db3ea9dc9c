class S { int x; S() { x = 1; } S(int v) { this.x = v; } }
