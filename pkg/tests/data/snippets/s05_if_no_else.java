class S { void m(int c) { if (c > 0) s(); } void s(){} }
