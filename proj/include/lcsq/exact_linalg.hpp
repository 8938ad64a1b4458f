#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsq/integer.hpp"
#include "lcsq/row_span.hpp"

namespace lcsq {

// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols);

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix transpose() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

template <class Ops>
IntMatrix span_to_matrix(const BasicRowSpan<Ops>& s) {
  IntMatrix m(s.rank(), s.cols());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = Int(s.rows()[i][j]);
  return m;
}

struct HnfResult {
  IntMatrix h;  // row Hermite normal form, zero rows at the bottom
  IntMatrix u;  // unimodular, u * m = h
  int rank = 0;
};

// Row-style HNF: echelon, positive pivots, entries above each pivot reduced
// into [0, pivot).
HnfResult hermite_normal_form(const IntMatrix& m);

struct SnfResult {
  IntMatrix p, d, q;         // p * m * q = d, p and q unimodular
  std::vector<Int> factors;  // nonzero diagonal, d1 | d2 | ... (units kept)
};

SnfResult snf_decomposition(const IntMatrix& m);

// Nonzero invariant factors d1 | d2 | ... of m, unit factors retained.
std::vector<Int> smith_normal_form(const IntMatrix& m);

// Free rank plus torsion of a finitely generated abelian group.
// factors is the canonical divisibility chain with unit factors stripped.
struct GroupInvariants {
  long rank = 0;
  std::vector<Int> factors;

  bool is_zero() const { return rank == 0 && factors.empty(); }
  std::map<Int, int> elementary_divisors() const {
    return prime_power_multiset(factors);
  }

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

class ContainmentError : public std::runtime_error {
 public:
  explicit ContainmentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invariants of (Z-span of u rows) / (Z-span of v rows). Throws
// ContainmentError when some v row is not in the span of u — that always
// signals an upstream span-generation bug, never bad user input.
GroupInvariants lattice_quotient(const IntMatrix& u_gens, const IntMatrix& v_gens);

// Quotient of the span of an already-echelonized reference lattice by the
// span of v_rows (same ambient coordinates).
GroupInvariants quotient_by_span(const RowSpan& u, const std::vector<std::vector<Int>>& v_rows);

// Rank over F_p after reduction mod p. Throws if p is not prime.
int rank_mod_p(const IntMatrix& m, long p);

// Row-echelon span over F_p with normalized (unit) pivots.
class FpRowSpan {
 public:
  using S = long;

  FpRowSpan(int cols, long p) : cols_(cols), p_(p) {}

  void insert(std::vector<long> row);  // entries reduced mod p internally
  void insert_int_row(const std::vector<Int>& row);
  void normalize() {}  // pivots are already unit; matches RowSpan's surface
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  long modulus() const { return p_; }
  const std::vector<std::vector<long>>& rows() const { return rows_; }

 private:
  int cols_;
  long p_;
  std::vector<std::vector<long>> rows_;
  std::vector<int> piv_;
};

}  // namespace lcsq
