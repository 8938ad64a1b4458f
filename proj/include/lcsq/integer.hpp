#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace lcsq {

// Arbitrary-precision integer used throughout the exact linear algebra.
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// g = x*a + y*b
inline Int int_xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

// Floor division quotient.
inline Int int_fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Int& d, const Int& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; the caller guarantees divisibility.
inline Int int_divexact(const Int& a, const Int& d) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline Int int_binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Trial-division factorization, prime -> exponent. Intended for the small
// torsion orders and moduli that occur here, not for cryptographic sizes.
std::map<Int, int> factorize(Int n);

// Torsion orders as a multiset of prime powers (12 -> {3,4}), the form the
// printed tables use. Input orders need not be a divisibility chain.
std::map<Int, int> prime_power_multiset(const std::vector<Int>& orders);

}  // namespace lcsq
