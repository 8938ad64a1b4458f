#pragma once

#include <iosfwd>
#include <string>

#include "lcsq/lcs_engine.hpp"

namespace lcsq {

// Torsion chain rendered as ascending elementary divisors with exponent
// notation for repeats: "3^{2} \cdot 4" (latex) or "3^2·4" (text).
std::string torsion_string(const std::vector<Int>& chain, bool latex);

// Aligned plain-text table. Cell syntax: rank, then torsion in parentheses;
// "0" for trivial computed cells, blank for uncomputed ones.
void emit_text(const BigradedTable& table, std::ostream& os);

// CSV with `# key=value` metadata lines; schema deg_x1,...,deg_xk,rank,torsion
// with torsion as a ';'-joined divisibility chain. Computed cells only.
void emit_csv(const BigradedTable& table, std::ostream& os);

// Inverse of emit_csv.
BigradedTable parse_csv(std::istream& is);

// LaTeX tabular in the published layout (two-generator tables): rows and
// columns 0..bound, {\tiny $0$} for computed zero cells, blank outside the
// computed triangle. The caption carries the wall time and memory figures.
void emit_latex(const BigradedTable& table, std::ostream& os, double wall_seconds,
                double memory_mb);

void emit_table(const BigradedTable& table, const std::string& format, std::ostream& os,
                double wall_seconds, double memory_mb);

}  // namespace lcsq
