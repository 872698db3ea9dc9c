class S { void m() { try { g(); } catch (RuntimeException e) { h(); } finally { g(); } } void g(){} void h(){} }
