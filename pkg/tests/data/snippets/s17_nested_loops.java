class S { void m(int n) { for (int i = 0; i < n; i++) { int j = 0; while (j < i) { j++; } } } }
