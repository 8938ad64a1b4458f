#pragma once

#include <string>
#include <vector>

#include "lcsq/integer.hpp"
#include "lcsq/lcs_engine.hpp"

namespace lcsq {

// binom(m, r) mod p via the base-p digit product.
long lucas_binomial(const Int& m, const Int& r, long p);

// Coefficient vector of k[x]/(x^(p^n)), indexed by exponent.
struct TruncatedPoly {
  long p = 2;
  int n = 1;
  std::vector<long> coeffs;  // size p^n, reduced mod p

  static TruncatedPoly zero(long p, int n);
  static TruncatedPoly x_power(long p, int n, long a);
  long size() const { return static_cast<long>(coeffs.size()); }

  friend bool operator==(const TruncatedPoly&, const TruncatedPoly&) = default;
};

// x or D_j = D^j / j! acting on a truncated polynomial module.
struct DividedPowerOp {
  enum class Kind { MultiplyByX, Derivation };
  Kind kind = Kind::MultiplyByX;
  long j = 0;  // meaningful for Derivation

  static DividedPowerOp x() { return {Kind::MultiplyByX, 0}; }
  static DividedPowerOp d(long j) { return {Kind::Derivation, j}; }
};

// multiply_by_x shifts exponents up and truncates; D_j maps x^a to
// binom(a, j) x^(a-j).
TruncatedPoly apply(const DividedPowerOp& op, const TruncatedPoly& v);

// Dense operator matrices over F_p acting on k[x]/(x^size), column a = image
// of x^a. These make every identity of section-2 style lemmas a finite,
// exact matrix check.
struct FpMatrix {
  long p = 2;
  int n = 0;  // square
  std::vector<long> a;

  FpMatrix() = default;
  FpMatrix(long p, int n) : p(p), n(n), a(static_cast<std::size_t>(n) * n) {}
  static FpMatrix identity(long p, int n);
  long& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  long at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_sub(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_pow(FpMatrix m, long e);
FpMatrix commutator(const FpMatrix& a, const FpMatrix& b);  // ab - ba
FpMatrix mat_scale(const FpMatrix& a, long c);

// op as a matrix on k[x]/(x^module_size) over F_p.
FpMatrix op_matrix(const DividedPowerOp& op, long p, long module_size);

struct CheckReport {
  bool pass = false;
  std::string detail;
};

// C * D_a == prod_s (D_{p^s})^{a_s} with C = prod_s a_s!, as operators on
// k[x]/(x^(p^n)); a_s are the base-p digits of a. Requires a < p^n.
CheckReport verify_decomposition(long a, long p, int n);

// (D_j)^p == 0 on k[x]/(x^(p^n)) for 1 <= j < p^n. j = 0 (the identity
// operator D_0) is rejected as out of scope.
CheckReport verify_nilpotent(long j, long p, int n);

// [D_{p^i}, x^(p^n)] == 0 for all i < n, checked on k[x]/(x^(p^(n+1))) where
// x^(p^n) acts nontrivially.
CheckReport verify_central(long p, int n);

struct DivisibilityReport {
  bool pass = false;
  Int total;
  Int modulus;
  Int quotient;
  std::string detail;
};

// Sum of the dimensions of an F_p table must be divisible by p^(sum exps).
// Preconditions checked: every run of x_j in every relation has length
// divisible by p^exps[j], and the table encloses its support (an all-zero
// boundary shell around the nonzero cells is computed).
DivisibilityReport check_dim_divisibility(const BigradedTable& table,
                                          const std::vector<int>& exps);

// True when every run of x_j in every relation word has length divisible by
// p^exps[j] (the syntactic "polynomial in x_j^(p^n_j)" test).
bool relations_are_power_polynomials(const AlgebraPresentation& pres, long p,
                                     const std::vector<int>& exps);

struct SeriesDivision {
  bool success = false;
  std::vector<Int> quotient;
  std::string detail;
};

// Exact polynomial division of the series by 1 + X + ... + X^(p^n - 1):
// succeeds iff the remainder is zero and every quotient coefficient is >= 0.
SeriesDivision series_divide(const std::vector<Int>& series, long p, int n);

// Prefix variant for truncated series: quotient coefficients are produced
// for the given range only and must be non-negative; no remainder claim.
SeriesDivision series_divide_prefix(const std::vector<Int>& series, long p, int n);

}  // namespace lcsq
