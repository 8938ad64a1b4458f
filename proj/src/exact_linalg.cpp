#include "lcsq/exact_linalg.hpp"

#include <algorithm>

namespace lcsq {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw std::invalid_argument("from_rows: ragged rows");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("mul: shape mismatch");
  IntMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int l = 0; l < cols; ++l) {
      const Int& x = at(i, l);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        mpz_addmul(r.at(i, j).get_mpz_t(), x.get_mpz_t(), o.at(l, j).get_mpz_t());
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

namespace {

void negate_row(IntMatrix& m, int i) {
  for (int j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
}

void swap_rows(IntMatrix& m, int i1, int i2) {
  if (i1 == i2) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(i1, j), m.at(i2, j));
}

void swap_cols(IntMatrix& m, int j1, int j2) {
  if (j1 == j2) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j1), m.at(i, j2));
}

// row_i -= q * row_t
void row_submul(IntMatrix& m, int i, int t, const Int& q) {
  if (q == 0) return;
  for (int j = 0; j < m.cols; ++j)
    mpz_submul(m.at(i, j).get_mpz_t(), q.get_mpz_t(), m.at(t, j).get_mpz_t());
}

// col_j -= q * col_t
void col_submul(IntMatrix& m, int j, int t, const Int& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows; ++i)
    mpz_submul(m.at(i, j).get_mpz_t(), q.get_mpz_t(), m.at(i, t).get_mpz_t());
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& m) {
  HnfResult res;
  res.h = m;
  res.u = IntMatrix::identity(m.rows);
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    // Euclidean staircase on column c, rows >= r.
    while (true) {
      int best = -1;
      for (int i = r; i < m.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        if (best < 0 || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(best, c).get_mpz_t()) < 0)
          best = i;
      }
      if (best < 0) break;
      swap_rows(h, r, best);
      swap_rows(u, r, best);
      if (h.at(r, c) < 0) {
        negate_row(h, r);
        negate_row(u, r);
      }
      bool clean = true;
      for (int i = r + 1; i < m.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = int_fdiv_q(h.at(i, c), h.at(r, c));
        row_submul(h, i, r, q);
        row_submul(u, i, r, q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) {
        for (int i = 0; i < r; ++i) {
          Int q = int_fdiv_q(h.at(i, c), h.at(r, c));
          row_submul(h, i, r, q);
          row_submul(u, i, r, q);
        }
        ++r;
        break;
      }
    }
  }
  res.rank = r;
  return res;
}

namespace {

// Shared SNF elimination; transform tracking optional.
std::vector<Int> snf_run(IntMatrix& a, IntMatrix* p, IntMatrix* q) {
  const int n = std::min(a.rows, a.cols);
  int t = 0;
  while (t < n) {
    int bi = -1, bj = -1;
    for (int i = t; i < a.rows; ++i)
      for (int j = t; j < a.cols; ++j) {
        if (a.at(i, j) == 0) continue;
        if (bi < 0 || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    swap_rows(a, t, bi);
    if (p) swap_rows(*p, t, bi);
    swap_cols(a, t, bj);
    if (q) swap_cols(*q, t, bj);
    if (a.at(t, t) < 0) {
      negate_row(a, t);
      if (p) negate_row(*p, t);
    }
    while (true) {
      bool restart = false;
      for (int i = t + 1; i < a.rows; ++i) {
        if (a.at(i, t) == 0) continue;
        Int qq = int_fdiv_q(a.at(i, t), a.at(t, t));
        row_submul(a, i, t, qq);
        if (p) row_submul(*p, i, t, qq);
        if (a.at(i, t) != 0) {
          // remainder is a smaller positive pivot candidate
          swap_rows(a, t, i);
          if (p) swap_rows(*p, t, i);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (int j = t + 1; j < a.cols; ++j) {
        if (a.at(t, j) == 0) continue;
        Int qq = int_fdiv_q(a.at(t, j), a.at(t, t));
        col_submul(a, j, t, qq);
        if (q) col_submul(*q, j, t, qq);
        if (a.at(t, j) != 0) {
          swap_cols(a, t, j);
          if (q) swap_cols(*q, t, j);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      // the pivot must divide the remaining submatrix for the chain property
      if (a.at(t, t) != 1) {
        int fi = -1;
        for (int i = t + 1; i < a.rows && fi < 0; ++i)
          for (int j = t + 1; j < a.cols; ++j)
            if (!divides(a.at(t, t), a.at(i, j))) {
              fi = i;
              break;
            }
        if (fi >= 0) {
          for (int j = 0; j < a.cols; ++j) a.at(t, j) += a.at(fi, j);
          if (p)
            for (int j = 0; j < p->cols; ++j) p->at(t, j) += p->at(fi, j);
          continue;
        }
      }
      break;
    }
    ++t;
  }
  std::vector<Int> factors;
  for (int i = 0; i < t; ++i) factors.push_back(a.at(i, i));
  return factors;
}

}  // namespace

SnfResult snf_decomposition(const IntMatrix& m) {
  SnfResult res;
  res.d = m;
  res.p = IntMatrix::identity(m.rows);
  res.q = IntMatrix::identity(m.cols);
  res.factors = snf_run(res.d, &res.p, &res.q);
  return res;
}

std::vector<Int> smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  return snf_run(a, nullptr, nullptr);
}

GroupInvariants quotient_by_span(const RowSpan& u, const std::vector<std::vector<Int>>& v_rows) {
  const int r = u.rank();
  RowSpan coords_span(r);
  for (std::size_t i = 0; i < v_rows.size(); ++i) {
    auto c = u.coordinates(v_rows[i]);
    if (!c)
      throw ContainmentError("lattice quotient: generator row " + std::to_string(i) +
                             " lies outside the reference lattice");
    coords_span.insert(std::move(*c));
  }
  GroupInvariants g;
  if (coords_span.all_unit_pivots()) {
    g.rank = r - coords_span.rank();
    return g;
  }
  std::vector<Int> factors = smith_normal_form(span_to_matrix(coords_span));
  g.rank = r - static_cast<long>(factors.size());
  for (Int& f : factors)
    if (f > 1) g.factors.push_back(std::move(f));
  return g;
}

GroupInvariants lattice_quotient(const IntMatrix& u_gens, const IntMatrix& v_gens) {
  if (u_gens.cols != v_gens.cols)
    throw std::invalid_argument("lattice_quotient: ambient dimension mismatch");
  RowSpan su(u_gens.cols);
  for (int i = 0; i < u_gens.rows; ++i) {
    std::vector<Int> row(u_gens.cols);
    for (int j = 0; j < u_gens.cols; ++j) row[j] = u_gens.at(i, j);
    su.insert(std::move(row));
  }
  std::vector<std::vector<Int>> v_rows;
  v_rows.reserve(v_gens.rows);
  for (int i = 0; i < v_gens.rows; ++i) {
    std::vector<Int> row(v_gens.cols);
    for (int j = 0; j < v_gens.cols; ++j) row[j] = v_gens.at(i, j);
    v_rows.push_back(std::move(row));
  }
  return quotient_by_span(su, v_rows);
}

int rank_mod_p(const IntMatrix& m, long p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: p must be prime");
  FpRowSpan span(m.cols, p);
  for (int i = 0; i < m.rows; ++i) {
    std::vector<Int> row(m.cols);
    for (int j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
    span.insert_int_row(row);
  }
  return span.rank();
}

namespace {

long mod_inverse(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return t < 0 ? t + p : t;
}

}  // namespace

void FpRowSpan::insert(std::vector<long> v) {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("FpRowSpan::insert: wrong row length");
  for (long& x : v) {
    x %= p_;
    if (x < 0) x += p_;
  }
  int lead = 0;
  while (lead < cols_ && v[lead] == 0) ++lead;
  std::size_t idx = 0;
  while (lead < cols_ && idx < rows_.size()) {
    int p = piv_[idx];
    if (p < lead) {
      ++idx;
      continue;
    }
    if (p > lead) break;
    const std::vector<long>& row = rows_[idx];
    long c = p_ - v[lead];  // row pivot is 1
    for (int j = lead; j < cols_; ++j) v[j] = (v[j] + c * row[j]) % p_;
    ++idx;
    while (lead < cols_ && v[lead] == 0) ++lead;
  }
  if (lead >= cols_) return;
  long inv = mod_inverse(v[lead], p_);
  for (int j = lead; j < cols_; ++j) v[j] = (v[j] * inv) % p_;
  std::size_t pos = 0;
  while (pos < piv_.size() && piv_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  piv_.insert(piv_.begin() + pos, lead);
}

void FpRowSpan::insert_int_row(const std::vector<Int>& row) {
  std::vector<long> v(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    v[j] = static_cast<long>(mpz_fdiv_ui(row[j].get_mpz_t(), static_cast<unsigned long>(p_)));
  insert(std::move(v));
}

}  // namespace lcsq
