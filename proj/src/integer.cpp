#include "lcsq/integer.hpp"

namespace lcsq {

std::map<Int, int> factorize(Int n) {
  std::map<Int, int> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  Int d = 2;
  while (d * d <= n) {
    while (divides(d, n)) {
      out[d] += 1;
      n = int_divexact(n, d);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) out[n] += 1;
  return out;
}

std::map<Int, int> prime_power_multiset(const std::vector<Int>& orders) {
  std::map<Int, int> out;
  for (const Int& t : orders) {
    for (const auto& [p, e] : factorize(t)) {
      Int q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
      out[q] += 1;
    }
  }
  return out;
}

}  // namespace lcsq
