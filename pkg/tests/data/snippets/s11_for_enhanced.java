class S { int m(int[] xs) { int t = 0; for (int x : xs) { t += x; } return t; } }
