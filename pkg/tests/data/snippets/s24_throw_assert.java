class S { void m(int x) { assert x >= 0 : "neg"; if (x == 0) throw new IllegalArgumentException("zero"); } }
