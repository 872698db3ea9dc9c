class S { void m() { int i = 0; do { i++; } while (i < 5); } }
