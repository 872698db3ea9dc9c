class S { void m(int c) { while (c > 0) c--; } }
