#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "lcsq/exact_linalg.hpp"

using namespace lcsq;

namespace {

IntMatrix mat(int rows, int cols, std::initializer_list<long> entries) {
  IntMatrix m(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Int(*it++);
  return m;
}

// cofactor-expansion determinant, independent of the elimination code
Int det_cofactor(const IntMatrix& m) {
  REQUIRE(m.rows == m.cols);
  if (m.rows == 0) return 1;
  if (m.rows == 1) return m.at(0, 0);
  Int d = 0;
  for (int j = 0; j < m.cols; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix sub(m.rows - 1, m.cols - 1);
    for (int r = 1; r < m.rows; ++r) {
      int cc = 0;
      for (int c = 0; c < m.cols; ++c) {
        if (c == j) continue;
        sub.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Int term = m.at(0, j) * det_cofactor(sub);
    if (j % 2) term = -term;
    d += term;
  }
  return d;
}

IntMatrix random_matrix(std::mt19937& rng, int max_dim, int max_abs) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  IntMatrix m(dim(rng), dim(rng));
  for (Int& x : m.a) x = entry(rng);
  return m;
}

bool is_diagonal(const IntMatrix& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

// gcd of all r x r minors via explicit cofactor determinants (oracle for
// lattice indices; no elimination involved)
Int minor_gcd(const IntMatrix& m, int r) {
  std::vector<int> rows(r), cols(r);
  Int g = 0;
  std::vector<int> rsel, csel;
  auto choose = [&](auto&& self, std::vector<int>& sel, int from, int total, int need,
                    auto&& done) -> void {
    if (need == 0) {
      done();
      return;
    }
    for (int v = from; v <= total - need; ++v) {
      sel.push_back(v);
      self(self, sel, v + 1, total, need - 1, done);
      sel.pop_back();
    }
  };
  choose(choose, rsel, 0, m.rows, r, [&] {
    choose(choose, csel, 0, m.cols, r, [&] {
      IntMatrix sub(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
      g = int_gcd(g, det_cofactor(sub));
    });
  });
  return g;
}

// x lies in the integer row span of v? decided through lattice indices:
// appending x leaves the gcd-of-minors invariant iff x was already inside.
bool in_lattice(const IntMatrix& v, const std::vector<Int>& x, int r) {
  IntMatrix ext(v.rows + 1, v.cols);
  for (int i = 0; i < v.rows; ++i)
    for (int j = 0; j < v.cols; ++j) ext.at(i, j) = v.at(i, j);
  for (int j = 0; j < v.cols; ++j) ext.at(v.rows, j) = x[j];
  return minor_gcd(ext, r) == minor_gcd(v, r) && minor_gcd(ext, r) != 0;
}

}  // namespace

TEST_CASE("hermite_normal_form: examples") {
  auto id = hermite_normal_form(IntMatrix::identity(2));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.rank == 2);

  auto r = hermite_normal_form(mat(2, 2, {2, 4, 6, 8}));
  CHECK(r.rank == 2);
  // lattice index in Z^2 = product of pivots = |det| = 8
  CHECK(r.h.at(0, 0) * r.h.at(1, 1) == 8);
  CHECK(r.h.at(1, 0) == 0);
  CHECK(r.u.mul(mat(2, 2, {2, 4, 6, 8})) == r.h);
  CHECK(det_cofactor(r.u) * det_cofactor(r.u) == 1);

  auto z = hermite_normal_form(mat(1, 2, {0, 0}));
  CHECK(z.rank == 0);
  CHECK(z.h == mat(1, 2, {0, 0}));
}

TEST_CASE("hermite_normal_form: U*M = H with unimodular U, echelon H") {
  std::mt19937 rng(101);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 6, 9);
    auto r = hermite_normal_form(m);
    CHECK(r.u.mul(m) == r.h);
    Int du = det_cofactor(r.u);
    CHECK(du * du == 1);
    // echelon with positive pivots, entries above pivots reduced
    int prev = -1;
    for (int i = 0; i < r.rank; ++i) {
      int lead = -1;
      for (int j = 0; j < m.cols; ++j)
        if (r.h.at(i, j) != 0) {
          lead = j;
          break;
        }
      REQUIRE(lead > prev);
      CHECK(r.h.at(i, lead) > 0);
      for (int ii = 0; ii < i; ++ii) {
        CHECK(r.h.at(ii, lead) >= 0);
        CHECK(r.h.at(ii, lead) < r.h.at(i, lead));
      }
      prev = lead;
    }
    for (int i = r.rank; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) CHECK(r.h.at(i, j) == 0);
  }
}

TEST_CASE("smith_normal_form: examples") {
  CHECK(smith_normal_form(mat(2, 2, {2, 0, 0, 3})) == std::vector<Int>{1, 6});
  CHECK(smith_normal_form(IntMatrix::identity(4)) == std::vector<Int>(4, 1));
  CHECK(smith_normal_form(mat(2, 2, {2, 4, 6, 8})) == std::vector<Int>{2, 4});
}

TEST_CASE("snf_decomposition: P*M*Q diagonal with divisibility chain") {
  std::mt19937 rng(103);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 6, 9);
    auto r = snf_decomposition(m);
    CHECK(r.p.mul(m).mul(r.q) == r.d);
    CHECK(is_diagonal(r.d));
    Int dp = det_cofactor(r.p), dq = det_cofactor(r.q);
    CHECK(dp * dp == 1);
    CHECK(dq * dq == 1);
    for (std::size_t i = 0; i + 1 < r.factors.size(); ++i) {
      CHECK(r.factors[i] > 0);
      CHECK(divides(r.factors[i], r.factors[i + 1]));
    }
    CHECK(r.factors == smith_normal_form(m));
  }
}

TEST_CASE("lattice_quotient: examples") {
  IntMatrix z2 = IntMatrix::identity(2);

  GroupInvariants g1 = lattice_quotient(z2, mat(2, 2, {2, 0, 0, 2}));
  CHECK(g1.rank == 0);
  CHECK(g1.factors == std::vector<Int>{2, 2});

  GroupInvariants g2 = lattice_quotient(z2, mat(1, 2, {1, 1}));
  CHECK(g2.rank == 1);
  CHECK(g2.factors.empty());

  GroupInvariants g3 = lattice_quotient(z2, mat(2, 2, {2, 4, 6, 8}));
  CHECK(g3.rank == 0);
  CHECK(g3.factors == std::vector<Int>{2, 4});
}

TEST_CASE("lattice_quotient: containment violation throws") {
  IntMatrix u = mat(1, 2, {2, 0});
  CHECK_THROWS_AS(lattice_quotient(u, mat(1, 2, {1, 0})), ContainmentError);
  IntMatrix u2 = mat(1, 2, {1, 0});
  CHECK_THROWS_AS(lattice_quotient(u2, mat(1, 2, {0, 1})), ContainmentError);
}

TEST_CASE("lattice_quotient: coset enumeration oracle on rank-0 quotients") {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> dim(1, 3), entry(-4, 4), coeff(-2, 2);
  int done = 0;
  while (done < 150) {
    int n = dim(rng);
    IntMatrix u(n, n);
    for (Int& x : u.a) x = entry(rng);
    if (det_cofactor(u) == 0) continue;
    // v = t * u with t nonsingular: guarantees full-rank sublattice
    IntMatrix t(n, n);
    for (Int& x : t.a) x = coeff(rng);
    if (det_cofactor(t) == 0) continue;
    IntMatrix v = t.mul(u);

    GroupInvariants g = lattice_quotient(u, v);
    CHECK(g.rank == 0);
    Int order = 1;
    for (const Int& f : g.factors) order *= f;

    // oracle 1: group order = lattice index = gcd of n x n minors of the
    // coordinates of v in u; here that is |det t|
    Int dt = det_cofactor(t);
    if (dt < 0) dt = -dt;
    CHECK(order == dt);

    // oracle 2: coset enumeration of Z^n / (row span of t) inside the box
    // [0, N)^n with N = group order (the quotient's exponent divides N)
    if (dt <= 16) {
      long nn = dt.get_si();
      std::vector<std::vector<Int>> reps;
      std::vector<int> pt(n, 0);
      auto next = [&]() {
        for (int j = 0; j < n; ++j) {
          if (++pt[j] < nn) return true;
          pt[j] = 0;
        }
        return false;
      };
      long classes = 0;
      do {
        std::vector<Int> x(n);
        for (int j = 0; j < n; ++j) x[j] = pt[j];
        bool found = false;
        for (const auto& rep : reps) {
          std::vector<Int> diff(n);
          for (int j = 0; j < n; ++j) diff[j] = x[j] - rep[j];
          if (in_lattice(t, diff, n)) {
            found = true;
            break;
          }
        }
        if (!found) {
          reps.push_back(x);
          ++classes;
        }
      } while (next());
      CHECK(Int(classes) == order);
    }
    ++done;
  }
}

TEST_CASE("rank_mod_p: examples") {
  CHECK(rank_mod_p(IntMatrix::identity(3), 5) == 3);
  CHECK(rank_mod_p(mat(2, 2, {2, 4, 6, 8}), 2) == 0);
  CHECK(rank_mod_p(mat(2, 2, {2, 4, 6, 8}), 3) == 2);
  CHECK_THROWS_AS(rank_mod_p(IntMatrix::identity(2), 6), std::invalid_argument);
}

TEST_CASE("rank_mod_p agrees with invariant factors") {
  std::mt19937 rng(109);
  const long primes[] = {2, 3, 5, 7};
  for (int t = 0; t < 150; ++t) {
    IntMatrix m = random_matrix(rng, 6, 9);
    auto factors = smith_normal_form(m);
    for (long p : primes) {
      int expect = 0;
      for (const Int& f : factors)
        if (!divides(Int(p), f)) ++expect;
      CHECK(rank_mod_p(m, p) == expect);
    }
  }
}

TEST_CASE("RowSpan: span preservation and coordinates") {
  std::mt19937 rng(113);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = random_matrix(rng, 5, 9);
    RowSpan s(m.cols);
    for (int i = 0; i < m.rows; ++i) {
      std::vector<Int> row(m.cols);
      for (int j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
      s.insert(std::move(row));
    }
    s.normalize();
    auto h = hermite_normal_form(m);
    CHECK(s.rank() == h.rank);
    // every original row solves exactly in the span
    for (int i = 0; i < m.rows; ++i) {
      std::vector<Int> row(m.cols);
      for (int j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
      CHECK(s.coordinates(row).has_value());
    }
    // the normalized echelon rows match the HNF rows (both canonical)
    for (int i = 0; i < s.rank(); ++i)
      for (int j = 0; j < m.cols; ++j) CHECK(s.rows()[i][j] == h.h.at(i, j));
  }
}

TEST_CASE("GroupInvariants: elementary divisors") {
  GroupInvariants g;
  g.rank = 1;
  g.factors = {Int(12)};
  auto ed = g.elementary_divisors();
  CHECK(ed.size() == 2);
  CHECK(ed.at(Int(4)) == 1);
  CHECK(ed.at(Int(3)) == 1);

  GroupInvariants h;
  h.rank = 1;
  h.factors = {Int(3), Int(4)};  // not a chain, but isomorphic content
  CHECK(g.elementary_divisors() == h.elementary_divisors());
}
