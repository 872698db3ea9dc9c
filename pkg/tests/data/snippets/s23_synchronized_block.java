class S { void m() { synchronized (this) { g(); h(); } } void g(){} void h(){} }
