class S { int a(int v) { int x = v; return x; } int b(int v) { int x = v * 2; return x; } }
