class S { int m(int[] xs) { int total = 0; for (int x : xs) { if (x > 0) { total += x; } else { total -= x; } } while (total > 100) { total /= 2; } return total; } }
