class S { int m() { int x = 0; x = x + 1; int y = x; return x + y; } }
