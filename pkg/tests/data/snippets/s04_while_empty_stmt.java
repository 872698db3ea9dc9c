class S { void m(boolean c) { while (c); } }
