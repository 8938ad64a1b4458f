#include "lcsq/table_io.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace lcsq {

std::string torsion_string(const std::vector<Int>& chain, bool latex) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, count] : prime_power_multiset(chain)) {
    if (!first) os << (latex ? " \\cdot " : "\u00b7");
    if (count == 1)
      os << q.get_str();
    else if (latex)
      os << q.get_str() << "^{" << count << "}";
    else
      os << q.get_str() << "^" << count;
    first = false;
  }
  return os.str();
}

namespace {

std::string text_cell(const TableCell& c) {
  std::string s = std::to_string(c.rank);
  if (!c.torsion.empty()) s += " (" + torsion_string(c.torsion, false) + ")";
  return s;
}

std::string relations_joined(const AlgebraPresentation& pres) {
  std::string s;
  for (std::size_t i = 0; i < pres.relations.size(); ++i) {
    if (i) s += ",";
    s += render_element(pres.relations[i]);
  }
  return s;
}

}  // namespace

void emit_text(const BigradedTable& table, std::ostream& os) {
  const AlgebraPresentation& pres = table.pres;
  os << "N_" << table.lcs_index << " over " << pres.ring.name() << "<";
  for (int j = 1; j <= pres.gens; ++j) os << (j > 1 ? "," : "") << "x" << j;
  os << ">";
  if (!pres.relations.empty()) os << "/(" << relations_joined(pres) << ")";
  os << ", total degree <= " << table.max_total_degree << "\n";
  for (const std::string& w : table.warnings) os << "warning: " << w << "\n";

  if (pres.gens == 2) {
    const int b = table.max_total_degree;
    std::vector<std::vector<std::string>> grid(b + 2, std::vector<std::string>(b + 2));
    std::vector<std::size_t> width(b + 2, 1);
    grid[0][0] = "d\\d";
    for (int c = 0; c <= b; ++c) grid[0][c + 1] = std::to_string(c);
    for (int r = 0; r <= b; ++r) grid[r + 1][0] = std::to_string(r);
    for (int r = 0; r <= b; ++r)
      for (int c = 0; c + r <= b; ++c) {
        MultiDegree d{r, c};
        if (table.computed(d)) grid[r + 1][c + 1] = text_cell(table.cells.at(d));
      }
    for (const auto& row : grid)
      for (std::size_t c = 0; c < row.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    for (const auto& row : grid) {
      for (std::size_t c = 0; c < row.size(); ++c)
        os << std::setw(static_cast<int>(width[c]) + 2) << row[c];
      os << "\n";
    }
    return;
  }
  // general arity: one line per computed cell
  for (const auto& [d, cell] : table.cells)
    os << to_string(d) << "  " << text_cell(cell) << "\n";
}

void emit_csv(const BigradedTable& table, std::ostream& os) {
  const AlgebraPresentation& pres = table.pres;
  os << "# lcsq-table v1\n";
  os << "# ring=" << pres.ring.name() << "\n";
  os << "# gens=" << pres.gens << "\n";
  os << "# relations=" << relations_joined(pres) << "\n";
  os << "# i=" << table.lcs_index << "\n";
  os << "# max_degree=" << table.max_total_degree << "\n";
  for (const std::string& w : table.warnings) os << "# warning=" << w << "\n";
  for (int j = 1; j <= pres.gens; ++j) os << "deg_x" << j << ",";
  os << "rank,torsion\n";
  for (const auto& [d, cell] : table.cells) {
    for (int j = 0; j < pres.gens; ++j) os << d[j] << ",";
    os << cell.rank << ",";
    for (std::size_t t = 0; t < cell.torsion.size(); ++t)
      os << (t ? ";" : "") << cell.torsion[t].get_str();
    os << "\n";
  }
}

BigradedTable parse_csv(std::istream& is) {
  BigradedTable t;
  std::string ring = "Z", relations;
  int gens = 2;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto meta = line.substr(1);
      auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(' '));
        return s;
      };
      meta = strip(meta);
      auto eq = meta.find('=');
      if (eq == std::string::npos) continue;
      std::string key = meta.substr(0, eq), val = meta.substr(eq + 1);
      if (key == "ring")
        ring = val;
      else if (key == "gens")
        gens = std::stoi(val);
      else if (key == "relations")
        relations = val;
      else if (key == "i")
        t.lcs_index = std::stoi(val);
      else if (key == "max_degree")
        t.max_total_degree = std::stoi(val);
      else if (key == "warning")
        t.warnings.push_back(val);
      continue;
    }
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    // trailing empty torsion field is eaten by getline
    while (static_cast<int>(fields.size()) < gens + 2) fields.push_back("");
    if (static_cast<int>(fields.size()) != gens + 2)
      throw std::runtime_error("parse_csv: bad row '" + line + "'");
    MultiDegree d = MultiDegree::zero(gens);
    for (int j = 0; j < gens; ++j) d[j] = std::stoi(fields[j]);
    TableCell cell;
    cell.rank = std::stol(fields[gens]);
    std::stringstream ts(fields[gens + 1]);
    std::string tok;
    while (std::getline(ts, tok, ';'))
      if (!tok.empty()) cell.torsion.emplace_back(tok);
    t.cells.emplace(std::move(d), std::move(cell));
  }
  t.pres.gens = gens;
  t.pres.ring = Ring::parse(ring);
  if (!relations.empty()) {
    std::stringstream rs(relations);
    std::string r;
    while (std::getline(rs, r, ','))
      if (!r.empty()) t.pres.relations.push_back(parse_element(r, gens));
  }
  return t;
}

namespace {

// x1^3 -> x_1^3, x1*x2 - x2*x1 -> x_1x_2 - x_2x_1
std::string latex_relation(const std::string& canonical) {
  std::string out;
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    char c = canonical[i];
    if (c == '*') continue;
    if (c == 'x' || c == '^') {
      out += c;
      if (c == 'x') out += '_';
      std::size_t j = i + 1;
      std::string digits;
      while (j < canonical.size() && std::isdigit(static_cast<unsigned char>(canonical[j])))
        digits += canonical[j++];
      if (digits.size() > 1)
        out += "{" + digits + "}";
      else
        out += digits;
      i = j - 1;
      continue;
    }
    out += c;
  }
  return out;
}

std::string latex_cell(const TableCell& c) {
  std::string s;
  if (c.rank == 0)
    s = "{\\tiny $0$ }";
  else
    s = "$" + std::to_string(c.rank) + "$";
  if (!c.torsion.empty()) s += "{  $(" + torsion_string(c.torsion, true) + ")$}";
  return s;
}

}  // namespace

void emit_latex(const BigradedTable& table, std::ostream& os, double wall_seconds,
                double memory_mb) {
  const AlgebraPresentation& pres = table.pres;
  if (pres.gens != 2)
    throw std::invalid_argument("latex emitter renders two-generator tables only");
  const int b = table.max_total_degree;

  os << "\\begin{table} [H] \n";
  os << "\\footnotesize\n";
  os << "\\caption{$N_" << table.lcs_index << ":\\ ";
  os << (pres.ring.is_fp ? "\\mathbb{Z}_" + std::to_string(pres.ring.p) : "\\mathbb{Z}");
  os << " \\langle x_1,x_2\\rangle ";
  if (!pres.relations.empty()) {
    os << "/(";
    for (std::size_t i = 0; i < pres.relations.size(); ++i)
      os << (i ? "," : "") << latex_relation(render_element(pres.relations[i]));
    os << ")";
  }
  os << "$, Time: " << std::fixed << std::setprecision(2) << wall_seconds
     << " sec, Memory: " << std::setprecision(2) << memory_mb << "MB}\n";
  os << "\\begin{tabular} {|l|";
  for (int c = 0; c <= b; ++c) os << "|l";
  os << "|}\n\\hline\n";
  os << "$(m,n)$";
  for (int c = 0; c <= b; ++c) os << " & $" << c << "$";
  os << " \\\\ \\hline \\hline\n";
  for (int r = 0; r <= b; ++r) {
    os << "$" << r << "$ &";
    for (int c = 0; c <= b; ++c) {
      MultiDegree d{r, c};
      if (c) os << " & ";
      if (table.computed(d)) os << latex_cell(table.cells.at(d));
      else os << " ";
    }
    os << " \\\\ \\hline\n";
  }
  os << "\\end{tabular}\n\\end{table}\n";
}

void emit_table(const BigradedTable& table, const std::string& format, std::ostream& os,
                double wall_seconds, double memory_mb) {
  if (format == "text")
    emit_text(table, os);
  else if (format == "csv")
    emit_csv(table, os);
  else if (format == "latex")
    emit_latex(table, os, wall_seconds, memory_mb);
  else
    throw std::invalid_argument("unknown format '" + format + "'");
}

}  // namespace lcsq
