#pragma once

#include <string>
#include <vector>

#include "lcsq/lcs_engine.hpp"

namespace lcsq {

// k for odd k, k/2 for even k; the torsion order showing up one past the
// relation degree.
long f_func(long k);

// Predicted bigraded table of N_2 for Z<x1,x2>/(x1^m, x2^n): Z on the open
// rectangle, Z_m / Z_n on the boundary rows, Z_gcd(m,n) at the corner.
// Cells cover [0..m] x [0..n]; everything outside is predicted zero.
BigradedTable predict_n2(int m, int n);

// Predicted table of N_3 on [0..m+1] x [0..n+1]. Requires m, n >= 3; the
// degenerate shapes below that are not covered by the closed form and are
// computed directly instead.
BigradedTable predict_n3(int m, int n);

// F_p dimension prediction from a computed Z table: rank plus the number of
// elementary divisors sharing a factor with p. A prediction to diff against
// a computed F_p table, never an assertion.
BigradedTable predict_fp_from_z(const BigradedTable& z_table, long p);

struct CellDiff {
  enum class Status { Match, Mismatch, NotComputed };
  MultiDegree degree;
  Status status = Status::Match;
  TableCell predicted;
  TableCell computed;
};

struct DiffReport {
  std::vector<CellDiff> entries;
  int matches = 0;
  int mismatches = 0;
  int not_computed = 0;

  // matching is judged on the computed cells; uncovered prediction cells are
  // reported separately as not-computed
  bool all_match() const { return mismatches == 0; }
  std::vector<MultiDegree> mismatch_cells() const;
};

// Per-cell comparison up to group isomorphism (rank equality plus equality
// of torsion as prime-power multisets). Covers every computed cell of the
// prediction's region and flags computed nonzero cells outside it; never
// hard-fails on mismatch.
DiffReport diff_tables(const BigradedTable& computed, const BigradedTable& predicted);

// True when the two cells are isomorphic groups (or equal dimensions).
bool cells_isomorphic(const TableCell& a, const TableCell& b);

std::string cell_to_string(const TableCell& cell);

}  // namespace lcsq
