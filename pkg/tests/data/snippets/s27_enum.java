enum S { A, B; int m() { return 1; } }
