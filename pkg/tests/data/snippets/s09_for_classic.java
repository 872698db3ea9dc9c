class S { int m() { int t = 0; for (int i = 0; i < 10; i++) { t += i; } return t; } }
