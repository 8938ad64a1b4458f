#include "lcsq/closed_forms.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace lcsq {

long f_func(long k) {
  if (k < 1) throw std::invalid_argument("f_func: k must be >= 1");
  return k % 2 == 1 ? k : k / 2;
}

namespace {

AlgebraPresentation power_presentation(int m, int n) {
  AlgebraPresentation pres;
  pres.gens = 2;
  pres.ring = Ring::integers();
  pres.relations.push_back(parse_element("x1^" + std::to_string(m), 2));
  pres.relations.push_back(parse_element("x2^" + std::to_string(n), 2));
  return pres;
}

// torsion orders with unit entries dropped, as a cell
TableCell cell(long rank, std::initializer_list<long> torsion = {}) {
  TableCell c;
  c.rank = rank;
  for (long t : torsion)
    if (t > 1) c.torsion.emplace_back(t);
  return c;
}

}  // namespace

BigradedTable predict_n2(int m, int n) {
  if (m < 1 || n < 1) throw std::domain_error("predict_n2: m, n must be >= 1");
  BigradedTable t;
  t.pres = power_presentation(m, n);
  t.lcs_index = 2;
  t.max_total_degree = m + n;
  const long g = std::gcd(m, n);
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n; ++b) {
      TableCell c;
      if (a >= 1 && b >= 1) {
        if (a < m && b < n)
          c = cell(1);
        else if (a == m && b < n)
          c = cell(0, {m});
        else if (a < m && b == n)
          c = cell(0, {n});
        else
          c = cell(0, {g});
      }
      t.cells.emplace(MultiDegree{a, b}, std::move(c));
    }
  return t;
}

BigradedTable predict_n3(int m, int n) {
  if (m < 3 || n < 3)
    throw std::domain_error("predict_n3: closed form only stated for m, n >= 3");
  BigradedTable t;
  t.pres = power_presentation(m, n);
  t.lcs_index = 3;
  t.max_total_degree = m + n + 2;
  const long g = std::gcd(m, n);
  const long fm = f_func(m), fn = f_func(n);
  for (int a = 0; a <= m + 1; ++a)
    for (int b = 0; b <= n + 1; ++b) {
      TableCell c;
      if (a >= 1 && b >= 1) {
        if (a == 1) {
          if (b == 1)
            c = cell(0);
          else if (b <= n)
            c = cell(1);
          else
            c = cell(0, {fn});
        } else if (a <= m - 1) {
          if (b == 1)
            c = cell(1);
          else if (b <= n - 1)
            c = cell(3);
          else if (b == n)
            c = cell(2, {n});
          else
            c = cell(0, {n, fn});
        } else if (a == m) {
          if (b == 1)
            c = cell(1);
          else if (b <= n - 1)
            c = cell(2, {m});
          else if (b == n)
            c = cell(0, {m, n});
          else
            c = cell(0, {fn, g});
        } else {  // a == m + 1
          if (b == 1)
            c = cell(0, {fm});
          else if (b <= n - 1)
            c = cell(0, {m, fm});
          else if (b == n)
            c = cell(0, {fm, g});
          else
            c = cell(0, {g});
        }
      }
      t.cells.emplace(MultiDegree{a, b}, std::move(c));
    }
  return t;
}

BigradedTable predict_fp_from_z(const BigradedTable& z_table, long p) {
  if (z_table.pres.ring.is_fp)
    throw std::invalid_argument("predict_fp_from_z: input must be a Z table");
  if (!is_prime(p)) throw std::invalid_argument("predict_fp_from_z: p must be prime");
  BigradedTable t;
  t.pres = z_table.pres;
  t.pres.ring = Ring::prime_field(p);
  t.lcs_index = z_table.lcs_index;
  t.max_total_degree = z_table.max_total_degree;
  for (const auto& [d, zc] : z_table.cells) {
    long dim = zc.rank;
    for (const auto& [q, count] : prime_power_multiset(zc.torsion))
      if (divides(Int(p), q)) dim += count;
    t.cells.emplace(d, TableCell{dim, {}});
  }
  return t;
}

bool cells_isomorphic(const TableCell& a, const TableCell& b) {
  return a.rank == b.rank &&
         prime_power_multiset(a.torsion) == prime_power_multiset(b.torsion);
}

std::string cell_to_string(const TableCell& cell) {
  std::ostringstream os;
  os << cell.rank;
  if (!cell.torsion.empty()) {
    os << " (";
    bool first = true;
    for (const auto& [q, count] : prime_power_multiset(cell.torsion)) {
      for (int i = 0; i < count; ++i) {
        if (!first) os << "*";
        os << q.get_str();
        first = false;
      }
    }
    os << ")";
  }
  return os.str();
}

std::vector<MultiDegree> DiffReport::mismatch_cells() const {
  std::vector<MultiDegree> out;
  for (const CellDiff& e : entries)
    if (e.status == CellDiff::Status::Mismatch) out.push_back(e.degree);
  return out;
}

DiffReport diff_tables(const BigradedTable& computed, const BigradedTable& predicted) {
  DiffReport rep;
  std::set<MultiDegree> seen;
  for (const auto& [d, pc] : predicted.cells) {
    CellDiff e;
    e.degree = d;
    e.predicted = pc;
    seen.insert(d);
    auto it = computed.cells.find(d);
    if (it == computed.cells.end()) {
      e.status = CellDiff::Status::NotComputed;
      rep.not_computed += 1;
    } else {
      e.computed = it->second;
      e.status = cells_isomorphic(pc, it->second) ? CellDiff::Status::Match
                                                  : CellDiff::Status::Mismatch;
      (e.status == CellDiff::Status::Match ? rep.matches : rep.mismatches) += 1;
    }
    rep.entries.push_back(std::move(e));
  }
  // computed nonzero cells outside the prediction's region are mismatches
  // against an implicit zero prediction
  for (const auto& [d, cc] : computed.cells) {
    if (seen.count(d) || cc.is_zero()) continue;
    CellDiff e;
    e.degree = d;
    e.computed = cc;
    e.status = CellDiff::Status::Mismatch;
    rep.mismatches += 1;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace lcsq
