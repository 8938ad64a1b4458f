#pragma once

#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lcsq/integer.hpp"

namespace lcsq {

// Raised by the word-sized scalar policy; callers fall back to the
// arbitrary-precision instantiation.
class SpanOverflow : public std::exception {
 public:
  const char* what() const noexcept override { return "int64 row reduction overflow"; }
};

struct IntOps {
  using S = Int;
  static bool is_zero(const S& a) { return a == 0; }
  static bool is_neg(const S& a) { return a < 0; }
  static bool is_one(const S& a) { return a == 1; }
  static void neg(S& a) { mpz_neg(a.get_mpz_t(), a.get_mpz_t()); }
  static bool divides(const S& d, const S& a) { return lcsq::divides(d, a); }
  static S divexact(const S& a, const S& d) { return int_divexact(a, d); }
  static S fdiv_q(const S& a, const S& b) { return int_fdiv_q(a, b); }
  // dest -= q * x
  static void submul(S& dest, const S& q, const S& x) {
    mpz_submul(dest.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
  }
  // with r = a - q*b in [0, b): round the quotient to nearest
  static bool round_up(const S& r, const S& b) { return 2 * r > b; }
  static void add_one(S& q) { q += 1; }
};

struct I64Ops {
  using S = long long;
  static void check(bool ok) {
    if (!ok) throw SpanOverflow();
  }
  static bool is_zero(S a) { return a == 0; }
  static bool is_neg(S a) { return a < 0; }
  static bool is_one(S a) { return a == 1; }
  static void neg(S& a) {
    check(a != std::numeric_limits<S>::min());
    a = -a;
  }
  static bool divides(S d, S a) { return a % d == 0; }
  static S divexact(S a, S d) { return a / d; }
  // floor division; divisors are kept positive by the caller
  static S fdiv_q(S a, S b) {
    S q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
  }
  static void submul(S& dest, S q, S x) {
    S t;
    check(!__builtin_mul_overflow(q, x, &t));
    check(!__builtin_sub_overflow(dest, t, &dest));
  }
  static bool round_up(S r, S b) { return r > b - r; }
  static void add_one(S& q) { check(!__builtin_add_overflow(q, S(1), &q)); }
};

// Incremental integer row-echelon span with the full Hermite reduction
// maintained after every insert: strictly increasing pivot columns, positive
// pivots, every entry in a pivot column reduced into [0, pivot). Keeping the
// rows reduced at all times is what holds intermediate entry growth down.
// Every transformation is unimodular, so the row span is preserved exactly.
template <class Ops>
class BasicRowSpan {
 public:
  using S = typename Ops::S;

  explicit BasicRowSpan(int cols) : cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<std::vector<S>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  void insert(std::vector<S> v) {
    if (static_cast<int>(v.size()) != cols_)
      throw std::invalid_argument("RowSpan::insert: wrong row length");
    int lead = 0;
    while (lead < cols_ && Ops::is_zero(v[lead])) ++lead;
    std::size_t idx = 0;
    while (lead < cols_) {
      while (idx < rows_.size() && piv_[idx] < lead) ++idx;
      if (idx == rows_.size() || piv_[idx] > lead) break;
      // Euclid between the pivot row and v at this column; round-to-nearest
      // quotients and swaps keep the magnitudes small
      bool pivot_changed = false;
      while (true) {
        std::vector<S>& row = rows_[idx];
        S q = Ops::fdiv_q(v[lead], row[lead]);
        S r = v[lead];
        Ops::submul(r, q, row[lead]);
        if (!Ops::is_zero(r) && Ops::round_up(r, row[lead])) Ops::add_one(q);
        if (!Ops::is_zero(q))
          for (int j = lead; j < cols_; ++j) Ops::submul(v[j], q, row[j]);
        if (Ops::is_zero(v[lead])) break;
        std::swap(row, v);  // |new pivot| <= pivot/2
        pivot_changed = true;
        if (Ops::is_neg(rows_[idx][lead]))
          for (int j = lead; j < cols_; ++j) Ops::neg(rows_[idx][j]);
      }
      if (pivot_changed) reduce_column(idx);
      while (lead < cols_ && Ops::is_zero(v[lead])) ++lead;
      ++idx;
    }
    if (lead >= cols_) return;
    if (Ops::is_neg(v[lead]))
      for (int j = lead; j < cols_; ++j) Ops::neg(v[j]);
    std::size_t pos = 0;
    while (pos < piv_.size() && piv_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    piv_.insert(piv_.begin() + pos, lead);
    // restore full reduction: the new row against later pivots, earlier rows
    // against the new pivot
    std::vector<S>& nr = rows_[pos];
    for (std::size_t j = pos + 1; j < rows_.size(); ++j) {
      const int p = piv_[j];
      if (Ops::is_zero(nr[p])) continue;
      S q = Ops::fdiv_q(nr[p], rows_[j][p]);
      if (Ops::is_zero(q)) continue;
      for (int c = p; c < cols_; ++c) Ops::submul(nr[c], q, rows_[j][c]);
    }
    reduce_column(pos);
  }

  bool all_unit_pivots() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!Ops::is_one(rows_[i][piv_[i]])) return false;
    return true;
  }

  // The reduction invariant is maintained by insert; kept as a cheap
  // idempotent hook for callers that assembled rows externally.
  void normalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) reduce_column(i);
  }

  // Exact integer coordinates of v with respect to rows(), or nullopt when
  // v is not in the span.
  std::optional<std::vector<S>> coordinates(const std::vector<S>& v) const {
    std::vector<S> w = v;
    std::vector<S> coords(rows_.size(), S(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int p = piv_[i];
      if (Ops::is_zero(w[p])) continue;
      const S& a = rows_[i][p];
      if (!Ops::divides(a, w[p])) return std::nullopt;
      S q = Ops::divexact(w[p], a);
      for (int c = p; c < cols_; ++c) Ops::submul(w[c], q, rows_[i][c]);
      coords[i] = std::move(q);
    }
    for (const S& x : w)
      if (!Ops::is_zero(x)) return std::nullopt;
    return coords;
  }

 private:
  // bring every other row's entry at pivot column idx into [0, pivot)
  void reduce_column(std::size_t idx) {
    const int p = piv_[idx];
    const std::vector<S>& base = rows_[idx];
    for (std::size_t j = 0; j < idx; ++j) {
      if (Ops::is_zero(rows_[j][p])) continue;
      S q = Ops::fdiv_q(rows_[j][p], base[p]);
      if (Ops::is_zero(q)) continue;
      for (int c = p; c < cols_; ++c) Ops::submul(rows_[j][c], q, base[c]);
    }
  }

  int cols_;
  std::vector<std::vector<S>> rows_;
  std::vector<int> piv_;
};

using RowSpan = BasicRowSpan<IntOps>;
using FastRowSpan = BasicRowSpan<I64Ops>;

}  // namespace lcsq
