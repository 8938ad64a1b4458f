// lcsq: lower central series ideal quotients of finitely presented graded
// algebras over Z and F_p.
//
// Modes (one binary, chosen by flags):
//   compute (default)      emit the N_i table for a presentation
//   --against n2|n3|fp-conjecture   diff a computed table against the
//                          closed-form prediction / the Z-to-F_p prediction
//   --check weyl|divisibility|hilbert   run the operator and divisibility
//                          checkers
//
// Exit codes: 0 success / all match, 1 mismatch or failed check, 2 usage or
// input error, 3 resource bound exceeded (blank cells emitted).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lcsq/cache.hpp"
#include "lcsq/closed_forms.hpp"
#include "lcsq/lcs_engine.hpp"
#include "lcsq/table_io.hpp"
#include "lcsq/weyl_divided.hpp"

using namespace lcsq;

namespace {

struct Options {
  std::string ring = "Z";
  int gens = 2;
  std::string relations;
  int i = 2;
  int max_degree = 10;
  std::string format = "text";
  std::string out;
  std::string against;
  std::string check;
  long p = 0;
  int weyl_n = 1;
  std::string exps;
  int variable = 1;
  std::string cache_dir;
  long max_dim = 4096;
  int threads = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

AlgebraPresentation build_presentation(const Options& opt) {
  AlgebraPresentation pres;
  pres.ring = Ring::parse(opt.ring);
  pres.gens = opt.gens;
  for (const std::string& r : split(opt.relations, ','))
    pres.relations.push_back(parse_element(r, opt.gens));
  pres.validate();
  return pres;
}

std::optional<std::filesystem::path> cache_directory(const Options& opt) {
  if (!opt.cache_dir.empty()) return std::filesystem::path(opt.cache_dir);
  if (const char* env = std::getenv("LCSQ_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

struct ComputedTable {
  BigradedTable table;
  double wall_seconds = 0.0;
  double memory_mb = 0.0;
  bool from_cache = false;
};

ComputedTable compute_table(const AlgebraPresentation& pres, int i, int bound,
                            const Options& opt) {
  ComputationKey key = ComputationKey::for_table(pres, i, bound);
  auto dir = cache_directory(opt);
  if (dir) {
    if (auto rec = cache_get(*dir, key))
      return {std::move(rec->table), rec->wall_seconds, rec->peak_memory_mb, true};
  }
  EngineOptions eopts;
  eopts.max_component_dim = opt.max_dim;
  eopts.threads = opt.threads;
  auto t0 = std::chrono::steady_clock::now();
  BigradedTable table = n_table(pres, i, bound, eopts);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double mem = peak_memory_mb();
  if (dir) cache_put(*dir, CacheRecord{key, table, wall, mem});
  return {std::move(table), wall, mem, false};
}

int emit(const ComputedTable& ct, const Options& opt) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      std::cerr << "error: cannot open output file " << opt.out << "\n";
      return 2;
    }
    os = &file;
  }
  emit_table(ct.table, opt.format, *os, ct.wall_seconds, ct.memory_mb);
  if (!ct.table.warnings.empty()) {
    for (const std::string& w : ct.table.warnings) std::cerr << "warning: " << w << "\n";
    return 3;
  }
  return 0;
}

int cmd_compute(const Options& opt) {
  AlgebraPresentation pres = build_presentation(opt);
  ComputedTable ct = compute_table(pres, opt.i, opt.max_degree, opt);
  return emit(ct, opt);
}

// relations must be exactly x1^m, x2^n (monic power monomials)
std::optional<std::pair<int, int>> power_exponents(const AlgebraPresentation& pres) {
  if (pres.gens != 2 || pres.relations.size() != 2) return std::nullopt;
  int m = 0, n = 0;
  for (const Element& f : pres.relations) {
    if (f.terms.size() != 1) return std::nullopt;
    const auto& [w, c] = *f.terms.begin();
    if (c != 1 || w.empty()) return std::nullopt;
    for (std::uint8_t g : w.letters)
      if (g != w.letters[0]) return std::nullopt;
    if (w.letters[0] == 1 && m == 0)
      m = w.length();
    else if (w.letters[0] == 2 && n == 0)
      n = w.length();
    else
      return std::nullopt;
  }
  if (m == 0 || n == 0) return std::nullopt;
  return std::make_pair(m, n);
}

void render_diff(const DiffReport& rep, std::ostream& os) {
  for (const CellDiff& e : rep.entries) {
    if (e.status == CellDiff::Status::Match) continue;
    if (e.status == CellDiff::Status::NotComputed)
      os << "  " << to_string(e.degree) << ": predicted " << cell_to_string(e.predicted)
         << ", not computed\n";
    else
      os << "  " << to_string(e.degree) << ": predicted " << cell_to_string(e.predicted)
         << ", computed " << cell_to_string(e.computed) << "\n";
  }
  os << rep.matches << " match, " << rep.mismatches << " mismatch, " << rep.not_computed
     << " not computed\n";
}

int cmd_verify(const Options& opt) {
  AlgebraPresentation pres = build_presentation(opt);
  if (opt.against == "n2" || opt.against == "n3") {
    if (pres.ring.is_fp) {
      std::cerr << "error: --against " << opt.against << " verifies tables over Z\n";
      return 2;
    }
    auto mn = power_exponents(pres);
    if (!mn) {
      std::cerr << "error: --against " << opt.against
                << " needs relations of the form x1^m,x2^n\n";
      return 2;
    }
    const int i = opt.against == "n2" ? 2 : 3;
    BigradedTable predicted;
    try {
      predicted = (i == 2) ? predict_n2(mn->first, mn->second)
                           : predict_n3(mn->first, mn->second);
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    ComputedTable ct = compute_table(pres, i, opt.max_degree, opt);
    DiffReport rep = diff_tables(ct.table, predicted);
    render_diff(rep, std::cout);
    return rep.all_match() ? 0 : 1;
  }
  if (opt.against == "fp-conjecture") {
    if (pres.ring.is_fp) {
      std::cerr << "error: fp-conjecture starts from a Z table; pass --ring Z and --p\n";
      return 2;
    }
    if (!is_prime(opt.p)) {
      std::cerr << "error: fp-conjecture needs a prime --p\n";
      return 2;
    }
    ComputedTable zt = compute_table(pres, opt.i, opt.max_degree, opt);
    AlgebraPresentation fp_pres = pres;
    fp_pres.ring = Ring::prime_field(opt.p);
    ComputedTable ft = compute_table(fp_pres, opt.i, opt.max_degree, opt);
    DiffReport rep = diff_tables(ft.table, predict_fp_from_z(zt.table, opt.p));
    render_diff(rep, std::cout);
    return rep.all_match() ? 0 : 1;
  }
  std::cerr << "error: unknown --against target '" << opt.against << "'\n";
  return 2;
}

// exponent n_j for the hilbert divisor, from the run lengths of x_var
int infer_exponent(const AlgebraPresentation& pres, long p, int var) {
  long g = 0;
  for (const Element& f : pres.relations)
    for (const auto& [w, c] : f.terms) {
      std::size_t i = 0;
      while (i < w.letters.size()) {
        std::size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        if (w.letters[i] == var) g = std::gcd(g, static_cast<long>(j - i));
        i = j;
      }
    }
  if (g == 0)
    throw std::invalid_argument(
        "variable x" + std::to_string(var) +
        " does not occur in the relations; pass --exps explicitly");
  int n = 0;
  while (g % p == 0) {
    g /= p;
    ++n;
  }
  return n;
}

int cmd_check(const Options& opt) {
  if (opt.check == "weyl") {
    if (!is_prime(opt.p)) {
      std::cerr << "error: --check weyl needs a prime --p\n";
      return 2;
    }
    const long p = opt.p;
    const int n = opt.weyl_n;
    long size = 1;
    for (int e = 0; e < n; ++e) size *= p;
    bool ok = true;
    for (long a = 1; a < size; ++a) {
      CheckReport r = verify_decomposition(a, p, n);
      if (!r.pass) std::cout << "FAIL " << r.detail << "\n";
      ok = ok && r.pass;
    }
    std::cout << (ok ? "pass" : "FAIL") << ": decomposition D_a = (1/C) prod (D_{p^s})^{a_s}, a < "
              << size << "\n";
    bool nil = true;
    for (long j = 1; j < size; ++j) {
      CheckReport r = verify_nilpotent(j, p, n);
      if (!r.pass) std::cout << "FAIL " << r.detail << "\n";
      nil = nil && r.pass;
    }
    std::cout << (nil ? "pass" : "FAIL") << ": (D_j)^p = 0 for 1 <= j < " << size << "\n";
    CheckReport c = verify_central(p, n);
    std::cout << (c.pass ? "pass" : "FAIL") << ": " << c.detail << "\n";
    ok = ok && nil && c.pass;
    return ok ? 0 : 1;
  }
  if (opt.check == "divisibility") {
    AlgebraPresentation pres = build_presentation(opt);
    if (!pres.ring.is_fp) {
      std::cerr << "error: --check divisibility needs --ring Fp:<p>\n";
      return 2;
    }
    std::vector<int> exps;
    for (const std::string& e : split(opt.exps, ',')) exps.push_back(std::stoi(e));
    if (static_cast<int>(exps.size()) != pres.gens) {
      std::cerr << "error: --exps needs one entry per generator\n";
      return 2;
    }
    ComputedTable ct = compute_table(pres, opt.i, opt.max_degree, opt);
    DivisibilityReport rep = check_dim_divisibility(ct.table, exps);
    std::cout << (rep.pass ? "pass" : "FAIL") << ": " << rep.detail << "\n";
    return rep.pass ? 0 : 1;
  }
  if (opt.check == "hilbert") {
    AlgebraPresentation pres = build_presentation(opt);
    if (!pres.ring.is_fp) {
      std::cerr << "error: --check hilbert needs --ring Fp:<p>\n";
      return 2;
    }
    const long p = pres.ring.p;
    int n;
    if (!opt.exps.empty()) {
      auto exps = split(opt.exps, ',');
      if (static_cast<int>(exps.size()) != pres.gens || opt.variable > pres.gens) {
        std::cerr << "error: --exps needs one entry per generator\n";
        return 2;
      }
      n = std::stoi(exps[opt.variable - 1]);
    } else {
      n = infer_exponent(pres, p, opt.variable);
    }
    ComputedTable ct = compute_table(pres, opt.i, opt.max_degree, opt);
    HilbertSeries hs = hilbert_series(ct.table, opt.variable);
    std::cout << "series coefficients (X^0..X^" << hs.complete_upto << "):";
    for (const Int& c : hs.coeffs) std::cout << " " << c.get_str();
    std::cout << (hs.support_enclosed ? " [support enclosed]" : " [truncated]") << "\n";
    SeriesDivision dv = hs.support_enclosed ? series_divide(hs.coeffs, p, n)
                                            : series_divide_prefix(hs.coeffs, p, n);
    if (dv.success) {
      std::cout << "pass: divisible by (1 + X + ... + X^(p^" << n << "-1)), quotient:";
      for (const Int& c : dv.quotient) std::cout << " " << c.get_str();
      std::cout << "\n";
      return 0;
    }
    std::cout << "FAIL: " << dv.detail << "\n";
    return 1;
  }
  std::cerr << "error: unknown --check target '" << opt.check << "'\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lcsq: exact lower-central-series ideal quotients N_i = M_i/M_{i+1} of "
      "finitely presented graded algebras over Z and F_p"};
  Options opt;
  app.add_option("--ring", opt.ring, "coefficient ring: Z or Fp:<p>")
      ->capture_default_str();
  app.add_option("--gens", opt.gens, "generator count")->capture_default_str();
  app.add_option("--relations", opt.relations,
                 "comma-separated homogeneous relations, e.g. \"x1^3,x2^7\"");
  app.add_option("--i", opt.i, "lower central series index i of N_i")
      ->capture_default_str();
  app.add_option("--max-degree", opt.max_degree, "total degree bound of the table")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format: text, csv or latex")
      ->capture_default_str();
  app.add_option("--out", opt.out, "output path (default stdout)");
  app.add_option("--against", opt.against,
                 "verify mode: n2, n3 or fp-conjecture");
  app.add_option("--check", opt.check, "check mode: weyl, divisibility or hilbert");
  app.add_option("--p", opt.p, "prime for --check weyl / --against fp-conjecture");
  app.add_option("--n", opt.weyl_n, "exponent n for --check weyl (module k[x]/(x^{p^n}))")
      ->capture_default_str();
  app.add_option("--exps", opt.exps,
                 "per-generator exponents n_j (comma-separated) for divisibility checks");
  app.add_option("--variable", opt.variable, "1-based variable for --check hilbert")
      ->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir,
                 "result cache directory (or env LCSQ_CACHE_DIR)");
  app.add_option("--max-dim", opt.max_dim,
                 "skip components with more monomials than this")
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!opt.check.empty()) return cmd_check(opt);
    if (!opt.against.empty()) return cmd_verify(opt);
    return cmd_compute(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContainmentError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
