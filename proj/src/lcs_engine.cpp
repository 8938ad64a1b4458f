#include "lcsq/lcs_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace lcsq {

std::vector<MultiDegree> degrees_up_to(int k, int bound) {
  std::vector<MultiDegree> out;
  std::vector<int> cur(k, 0);
  for (int t = 0; t <= bound; ++t) {
    // all weak compositions of t into k parts, lexicographically
    auto rec = [&](auto&& self, int pos, int rest) -> void {
      if (pos == k - 1) {
        cur[pos] = rest;
        out.emplace_back(cur);
        return;
      }
      for (int v = 0; v <= rest; ++v) {
        cur[pos] = v;
        self(self, pos + 1, rest - v);
      }
    };
    rec(rec, 0, t);
  }
  return out;
}

namespace detail {

struct MonoBasis {
  std::vector<Word> words;
  std::unordered_map<Word, int, WordHash> index;
};

struct MonoCache {
  int k = 0;
  std::map<MultiDegree, MonoBasis> by_degree;

  const MonoBasis& get(const MultiDegree& d) {
    auto it = by_degree.find(d);
    if (it != by_degree.end()) return it->second;
    MonoBasis b;
    b.words = monomials_of_multidegree(k, d);
    b.index.reserve(b.words.size());
    for (std::size_t j = 0; j < b.words.size(); ++j)
      b.index.emplace(b.words[j], static_cast<int>(j));
    return by_degree.emplace(d, std::move(b)).first->second;
  }
};

// ---- scalar policies -------------------------------------------------------

struct FastZPolicy {
  using Span = FastRowSpan;
  using S = long long;
  Span make(int cols) const { return Span(cols); }
  S from_int(const Int& v) const {
    if (!v.fits_slong_p()) throw SpanOverflow();
    return v.get_si();
  }
  S from_small(long long v) const { return v; }
  void acc(S& dest, S v) const { I64Ops::check(!__builtin_add_overflow(dest, v, &dest)); }
  S negate(S v) const {
    I64Ops::check(v != std::numeric_limits<S>::min());
    return -v;
  }
};

struct ExactZPolicy {
  using Span = RowSpan;
  using S = Int;
  Span make(int cols) const { return Span(cols); }
  S from_int(const Int& v) const { return v; }
  S from_small(long long v) const { return Int(static_cast<long>(v)); }
  void acc(S& dest, const S& v) const { dest += v; }
  S negate(const S& v) const { return -v; }
};

struct FpPolicy {
  using Span = FpRowSpan;
  using S = long;
  long p = 2;
  Span make(int cols) const { return Span(cols, p); }
  S from_int(const Int& v) const {
    return static_cast<S>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
  }
  S from_small(long long v) const {
    long r = static_cast<long>(v % p);
    return r < 0 ? r + p : r;
  }
  void acc(S& dest, S v) const {
    dest = (dest + v) % p;
    if (dest < 0) dest += p;
  }
  S negate(S v) const { return v == 0 ? 0 : p - v; }
};

// ---- row generation --------------------------------------------------------

template <class P>
std::vector<typename P::S> element_row(const P& pol, const Element& e, const MonoBasis& mb) {
  std::vector<typename P::S> row(mb.words.size());
  for (const auto& [w, c] : e.terms) row[mb.index.at(w)] = pol.from_int(c);
  return row;
}

// [m, src] in destination coordinates
template <class P>
std::vector<typename P::S> bracket_row(const P& pol, const Word& m,
                                       const std::vector<typename P::S>& src,
                                       const MonoBasis& src_mb, const MonoBasis& dst_mb) {
  std::vector<typename P::S> row(dst_mb.words.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] == 0) continue;
    const Word& w = src_mb.words[j];
    pol.acc(row[dst_mb.index.at(m.concat(w))], src[j]);
    pol.acc(row[dst_mb.index.at(w.concat(m))], pol.negate(src[j]));
  }
  return row;
}

// x_gen * src or src * x_gen
template <class P>
std::vector<typename P::S> shift_row(const P& pol, int gen, bool left,
                                     const std::vector<typename P::S>& src,
                                     const MonoBasis& src_mb, const MonoBasis& dst_mb) {
  (void)pol;
  std::vector<typename P::S> row(dst_mb.words.size());
  Word g(std::vector<std::uint8_t>{static_cast<std::uint8_t>(gen)});
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] == 0) continue;
    const Word& w = src_mb.words[j];
    row[dst_mb.index.at(left ? g.concat(w) : w.concat(g))] = src[j];
  }
  return row;
}

// ---- per-ring span caches --------------------------------------------------

// Reduced spanning lattices of L_i, M_i and the relation ideal, built degree
// by degree: M_i(d) = L_i(d) + sum_j x_j M_i(d - e_j) + M_i(d - e_j) x_j and
// likewise for the ideal. Each level is reduced to an echelon basis before
// the next level consumes it, which keeps every span exact while avoiding
// the cubic blowup of the literal u * l * v enumeration.
template <class P>
struct SpanCore {
  int k = 0;
  P pol;
  std::vector<Element> relations;
  MonoCache* mono = nullptr;

  using Span = typename P::Span;
  std::map<std::pair<int, MultiDegree>, Span> l_, m_;
  std::map<MultiDegree, Span> ideal_;

  int dim(const MultiDegree& d) { return static_cast<int>(mono->get(d).words.size()); }

  bool ideal_possible(const MultiDegree& e) const {
    for (const Element& f : relations)
      if (f.degree.component_leq(e)) return true;
    return false;
  }

  const Span& l(int i, const MultiDegree& d) {
    auto key = std::make_pair(i, d);
    auto it = l_.find(key);
    if (it != l_.end()) return it->second;
    const MonoBasis& dmb = mono->get(d);
    Span s = pol.make(static_cast<int>(dmb.words.size()));
    if (i == 1) {
      for (std::size_t j = 0; j < dmb.words.size(); ++j) {
        std::vector<typename P::S> row(dmb.words.size());
        row[j] = pol.from_small(1);
        s.insert(std::move(row));
      }
    } else if (d.total() >= i) {
      for (const MultiDegree& dm : degrees_up_to(k, d.total() - (i - 1))) {
        if (dm.is_zero() || !dm.component_leq(d)) continue;
        MultiDegree dl = d.minus(dm);
        if (dl.total() < i - 1) continue;
        const MonoBasis& mmb = mono->get(dm);
        const MonoBasis& lmb = mono->get(dl);
        if (i == 2) {
          for (const Word& m : mmb.words)
            for (const Word& w : lmb.words) {
              std::vector<typename P::S> row(dmb.words.size());
              pol.acc(row[dmb.index.at(m.concat(w))], pol.from_small(1));
              pol.acc(row[dmb.index.at(w.concat(m))], pol.from_small(-1));
              s.insert(std::move(row));
            }
        } else {
          const Span& src = l(i - 1, dl);
          for (const Word& m : mmb.words)
            for (const auto& row : src.rows())
              s.insert(bracket_row(pol, m, row, lmb, dmb));
        }
      }
    }
    s.normalize();
    return l_.emplace(std::move(key), std::move(s)).first->second;
  }

  const Span& m(int i, const MultiDegree& d) {
    auto key = std::make_pair(i, d);
    auto it = m_.find(key);
    if (it != m_.end()) return it->second;
    const MonoBasis& dmb = mono->get(d);
    const int n = static_cast<int>(dmb.words.size());
    Span s = pol.make(n);
    if (d.total() >= i || i == 1) {
      {
        const Span& li = l(i, d);
        for (const auto& row : li.rows()) s.insert(row);
      }
      for (int j = 0; j < k && s.rank() < n; ++j) {
        if (d[j] == 0) continue;
        MultiDegree e = d;
        e[j] -= 1;
        if (e.total() < i && i != 1) continue;
        const Span& sub = m(i, e);
        const MonoBasis& emb = mono->get(e);
        for (const auto& row : sub.rows()) {
          s.insert(shift_row(pol, j + 1, true, row, emb, dmb));
          s.insert(shift_row(pol, j + 1, false, row, emb, dmb));
        }
      }
    }
    s.normalize();
    return m_.emplace(std::move(key), std::move(s)).first->second;
  }

  const Span& ideal(const MultiDegree& d) {
    auto it = ideal_.find(d);
    if (it != ideal_.end()) return it->second;
    const MonoBasis& dmb = mono->get(d);
    const int n = static_cast<int>(dmb.words.size());
    Span s = pol.make(n);
    if (ideal_possible(d)) {
      for (const Element& f : relations)
        if (f.degree == d) s.insert(element_row(pol, f, dmb));
      for (int j = 0; j < k && s.rank() < n; ++j) {
        if (d[j] == 0) continue;
        MultiDegree e = d;
        e[j] -= 1;
        if (!ideal_possible(e)) continue;
        const Span& sub = ideal(e);
        const MonoBasis& emb = mono->get(e);
        for (const auto& row : sub.rows()) {
          s.insert(shift_row(pol, j + 1, true, row, emb, dmb));
          s.insert(shift_row(pol, j + 1, false, row, emb, dmb));
        }
      }
    }
    s.normalize();
    return ideal_.emplace(d, std::move(s)).first->second;
  }
};

inline Int scalar_to_int(const Int& v) { return v; }
inline Int scalar_to_int(long long v) { return Int(static_cast<long>(v)); }
inline Int scalar_to_int(long v) { return Int(v); }

template <class SpanT>
std::vector<std::vector<Int>> rows_as_int(const SpanT& s) {
  std::vector<std::vector<Int>> out;
  out.reserve(s.rows().size());
  for (const auto& row : s.rows()) {
    std::vector<Int> r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = scalar_to_int(row[j]);
    out.push_back(std::move(r));
  }
  return out;
}

// ---- engine state ----------------------------------------------------------

struct EngineState {
  AlgebraPresentation pres;
  EngineOptions opts;
  MonoCache mono;
  std::unique_ptr<SpanCore<FastZPolicy>> fast;
  std::unique_ptr<SpanCore<ExactZPolicy>> exact;
  std::unique_ptr<SpanCore<FpPolicy>> fp;
  bool exact_mode = false;

  template <class P>
  std::unique_ptr<SpanCore<P>> make_core(P pol) {
    auto core = std::make_unique<SpanCore<P>>();
    core->k = pres.gens;
    core->pol = pol;
    core->relations = pres.relations;
    core->mono = &mono;
    return core;
  }

  SpanCore<FpPolicy>& fp_core() {
    if (!fp) fp = make_core(FpPolicy{pres.ring.p});
    return *fp;
  }

  // Run f against the Z span cache; the int64 core escalates to the exact
  // core once and permanently on overflow.
  template <class F>
  auto with_z(F&& f) {
    if (!exact_mode) {
      if (!fast) fast = make_core(FastZPolicy{});
      try {
        return f(*fast);
      } catch (const SpanOverflow&) {
        exact_mode = true;
        fast.reset();
      }
    }
    if (!exact) exact = make_core(ExactZPolicy{});
    return f(*exact);
  }

  void validate_degree(const MultiDegree& d) const {
    if (d.size() != pres.gens)
      throw std::invalid_argument("multidegree arity does not match generator count");
    for (int j = 0; j < d.size(); ++j)
      if (d[j] < 0) throw std::invalid_argument("negative multidegree entry");
  }

  TableCell z_component_from(SpanCore<FastZPolicy>* fc, SpanCore<ExactZPolicy>* ec,
                             int i, const MultiDegree& d) {
    auto u_rows = fc ? rows_as_int(fc->m_.at({i, d})) : rows_as_int(ec->m_.at({i, d}));
    auto i_rows = fc ? rows_as_int(fc->ideal_.at(d)) : rows_as_int(ec->ideal_.at(d));
    auto v_rows = fc ? rows_as_int(fc->m_.at({i + 1, d})) : rows_as_int(ec->m_.at({i + 1, d}));
    const int n = static_cast<int>(mono.by_degree.at(d).words.size());
    RowSpan su(n);
    for (auto& r : u_rows) su.insert(std::move(r));
    for (const auto& r : i_rows) su.insert(r);
    for (auto& r : i_rows) v_rows.push_back(std::move(r));
    GroupInvariants g = quotient_by_span(su, v_rows);
    return TableCell{g.rank, std::move(g.factors)};
  }

  TableCell fp_component_from(SpanCore<FpPolicy>& core, int i, const MultiDegree& d) {
    FpRowSpan u = core.m_.at({i, d});
    FpRowSpan v = core.m_.at({i + 1, d});
    const FpRowSpan& id = core.ideal_.at(d);
    for (const auto& row : id.rows()) {
      u.insert(row);
      v.insert(row);
    }
    return TableCell{u.rank() - v.rank(), {}};
  }

  // Build every span the (i, d) component needs; must run single-threaded.
  void prepare(int i, const MultiDegree& d) {
    if (pres.ring.is_fp) {
      auto& core = fp_core();
      core.m(i, d);
      core.m(i + 1, d);
      core.ideal(d);
    } else {
      with_z([&](auto& core) -> int {
        core.m(i, d);
        core.m(i + 1, d);
        core.ideal(d);
        return 0;
      });
    }
  }

  TableCell component_from_caches(int i, const MultiDegree& d) {
    if (pres.ring.is_fp) return fp_component_from(fp_core(), i, d);
    return z_component_from(fast.get(), exact.get(), i, d);
  }

  TableCell n_component(int i, const MultiDegree& d) {
    prepare(i, d);
    return component_from_caches(i, d);
  }
};

}  // namespace detail

using detail::EngineState;

LcsEngine::LcsEngine(AlgebraPresentation pres, EngineOptions opts)
    : st_(std::make_unique<EngineState>()) {
  pres.validate();
  st_->pres = std::move(pres);
  st_->opts = opts;
  st_->mono.k = st_->pres.gens;
}

LcsEngine::~LcsEngine() = default;
LcsEngine::LcsEngine(LcsEngine&&) noexcept = default;
LcsEngine& LcsEngine::operator=(LcsEngine&&) noexcept = default;

const AlgebraPresentation& LcsEngine::presentation() const { return st_->pres; }

namespace {

Element row_to_element(const std::vector<Int>& row, const detail::MonoBasis& mb,
                       const MultiDegree& d) {
  Element e = Element::zero(d);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) e.terms.emplace(mb.words[j], row[j]);
  return e;
}

}  // namespace

SpanningSet LcsEngine::l_spanning_set(int i, const MultiDegree& d) {
  auto& st = *st_;
  st.validate_degree(d);
  if (i < 1) throw std::invalid_argument("l_spanning_set: i must be >= 1");
  if (d.total() < 1) throw std::invalid_argument("l_spanning_set: total degree must be >= 1");
  const int k = st.pres.gens;
  SpanningSet ss;
  ss.degree = d;
  ss.basis_order = st.mono.get(d).words;
  if (i == 1) {
    for (const Word& w : ss.basis_order) ss.vectors.push_back(Element::monomial(w, k));
    return ss;
  }
  for (const MultiDegree& dm : degrees_up_to(k, d.total() - (i - 1))) {
    if (dm.is_zero() || !dm.component_leq(d)) continue;
    MultiDegree dl = d.minus(dm);
    if (dl.total() < i - 1) continue;
    for (const Word& m : st.mono.get(dm).words) {
      Element me = Element::monomial(m, k);
      if (i == 2) {
        for (const Word& w : st.mono.get(dl).words)
          ss.vectors.push_back(bracket(me, Element::monomial(w, k)));
      } else {
        auto ell = l_basis(i - 1, dl);
        const detail::MonoBasis& lmb = st.mono.get(dl);
        for (const auto& row : ell)
          ss.vectors.push_back(bracket(me, row_to_element(row, lmb, dl)));
      }
    }
  }
  return ss;
}

SpanningSet LcsEngine::m_spanning_set(int i, const MultiDegree& d) {
  auto& st = *st_;
  st.validate_degree(d);
  if (i < 1) throw std::invalid_argument("m_spanning_set: i must be >= 1");
  if (d.total() < 1) throw std::invalid_argument("m_spanning_set: total degree must be >= 1");
  const int k = st.pres.gens;
  SpanningSet ss;
  ss.degree = d;
  ss.basis_order = st.mono.get(d).words;
  for (const MultiDegree& du : degrees_up_to(k, d.total())) {
    if (!du.component_leq(d)) continue;
    MultiDegree rest = d.minus(du);
    for (const MultiDegree& dm : degrees_up_to(k, rest.total())) {
      if (!dm.component_leq(rest) || dm.total() < std::max(i, 1)) continue;
      MultiDegree dv = rest.minus(dm);
      // middle factors: reduced basis of L_i at dm (span-equal to the
      // literal L_i spanning family)
      std::vector<Element> mids;
      if (i == 1) {
        for (const Word& w : st.mono.get(dm).words) mids.push_back(Element::monomial(w, k));
      } else {
        auto ell = l_basis(i, dm);
        const detail::MonoBasis& lmb = st.mono.get(dm);
        for (const auto& row : ell) mids.push_back(row_to_element(row, lmb, dm));
      }
      if (mids.empty()) continue;
      for (const Word& u : st.mono.get(du).words)
        for (const Word& v : st.mono.get(dv).words) {
          Element ue = Element::monomial(u, k);
          Element ve = Element::monomial(v, k);
          for (const Element& mid : mids)
            ss.vectors.push_back(multiply(multiply(ue, mid), ve));
        }
    }
  }
  return ss;
}

SpanningSet LcsEngine::ideal_spanning_set(const MultiDegree& d) {
  auto& st = *st_;
  st.validate_degree(d);
  const int k = st.pres.gens;
  SpanningSet ss;
  ss.degree = d;
  ss.basis_order = st.mono.get(d).words;
  for (const Element& f : st.pres.relations) {
    if (!f.degree.component_leq(d)) continue;
    MultiDegree rest = d.minus(f.degree);
    for (const MultiDegree& du : degrees_up_to(k, rest.total())) {
      if (!du.component_leq(rest)) continue;
      MultiDegree dv = rest.minus(du);
      for (const Word& u : st.mono.get(du).words)
        for (const Word& v : st.mono.get(dv).words)
          ss.vectors.push_back(
              multiply(multiply(Element::monomial(u, k), f), Element::monomial(v, k)));
    }
  }
  return ss;
}

std::vector<std::vector<Int>> LcsEngine::l_basis(int i, const MultiDegree& d) {
  st_->validate_degree(d);
  return st_->with_z([&](auto& core) { return detail::rows_as_int(core.l(i, d)); });
}

std::vector<std::vector<Int>> LcsEngine::m_basis(int i, const MultiDegree& d) {
  st_->validate_degree(d);
  return st_->with_z([&](auto& core) { return detail::rows_as_int(core.m(i, d)); });
}

std::vector<std::vector<Int>> LcsEngine::ideal_basis(const MultiDegree& d) {
  st_->validate_degree(d);
  return st_->with_z([&](auto& core) { return detail::rows_as_int(core.ideal(d)); });
}

TableCell LcsEngine::n_component(int i, const MultiDegree& d) {
  st_->validate_degree(d);
  if (i < 1) throw std::invalid_argument("n_component: i must be >= 1");
  return st_->n_component(i, d);
}

BigradedTable LcsEngine::n_table(int i, int max_total_degree) {
  auto& st = *st_;
  if (i < 1) throw std::invalid_argument("n_table: i must be >= 1");
  if (max_total_degree < 0) throw std::invalid_argument("n_table: negative bound");
  BigradedTable t;
  t.pres = st.pres;
  t.lcs_index = i;
  t.max_total_degree = max_total_degree;

  std::vector<MultiDegree> work;
  for (const MultiDegree& d : degrees_up_to(st.pres.gens, max_total_degree)) {
    if (multidegree_count(d) > st.opts.max_component_dim) {
      t.warnings.push_back("component " + to_string(d) + " skipped: " +
                           multidegree_count(d).get_str() + " monomials exceed cap " +
                           std::to_string(st.opts.max_component_dim));
      continue;
    }
    work.push_back(d);
  }
  // A mid-pass int64 overflow escalates to the exact core and drops the fast
  // caches; a second pass then rebuilds every span there.
  while (true) {
    bool was_exact = st.exact_mode;
    for (const MultiDegree& d : work) st.prepare(i, d);
    if (st.exact_mode == was_exact) break;
  }

  std::vector<TableCell> results(work.size());
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = st.opts.threads > 0 ? st.opts.threads : (hw ? hw : 1);
  nthreads = std::min(nthreads, work.size());
  if (nthreads <= 1) {
    for (std::size_t t_idx = 0; t_idx < work.size(); ++t_idx)
      results[t_idx] = st.component_from_caches(i, work[t_idx]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto worker = [&]() {
      while (true) {
        std::size_t t_idx = next.fetch_add(1);
        if (t_idx >= work.size()) return;
        try {
          results[t_idx] = st.component_from_caches(i, work[t_idx]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  for (std::size_t t_idx = 0; t_idx < work.size(); ++t_idx)
    t.cells.emplace(work[t_idx], std::move(results[t_idx]));
  return t;
}

SpanningSet l_spanning_set(int i, const MultiDegree& d, int k) {
  LcsEngine eng(AlgebraPresentation{k, Ring::integers(), {}});
  return eng.l_spanning_set(i, d);
}

SpanningSet m_spanning_set(int i, const MultiDegree& d, int k) {
  LcsEngine eng(AlgebraPresentation{k, Ring::integers(), {}});
  return eng.m_spanning_set(i, d);
}

SpanningSet ideal_spanning_set(const std::vector<Element>& relations,
                               const MultiDegree& d, int k) {
  LcsEngine eng(AlgebraPresentation{k, Ring::integers(), relations});
  return eng.ideal_spanning_set(d);
}

TableCell n_component(const AlgebraPresentation& pres, int i, const MultiDegree& d) {
  LcsEngine eng(pres);
  return eng.n_component(i, d);
}

BigradedTable n_table(const AlgebraPresentation& pres, int i, int max_total_degree,
                      EngineOptions opts) {
  LcsEngine eng(pres, opts);
  return eng.n_table(i, max_total_degree);
}

HilbertSeries hilbert_series(const BigradedTable& table, int variable,
                             std::optional<int> up_to) {
  if (!table.pres.ring.is_fp)
    throw std::invalid_argument("hilbert_series: table must be over F_p");
  const int k = table.pres.gens;
  if (variable < 1 || variable > k)
    throw std::invalid_argument("hilbert_series: variable out of range");
  const int v = variable - 1;
  const int bound = table.max_total_degree;

  std::vector<char> all_computed(bound + 1, 1), boundary_zero(bound + 1, 1);
  std::vector<Int> sums(bound + 1, 0);
  for (const MultiDegree& d : degrees_up_to(k, bound)) {
    const int a = d[v];
    auto it = table.cells.find(d);
    if (it == table.cells.end()) {
      all_computed[a] = 0;
      continue;
    }
    sums[a] += it->second.rank;
    if (d.total() == bound && it->second.rank != 0) boundary_zero[a] = 0;
  }

  HilbertSeries hs;
  int a = 0;
  while (a <= bound && all_computed[a] && boundary_zero[a]) {
    hs.coeffs.push_back(sums[a]);
    ++a;
  }
  hs.complete_upto = a - 1;
  int last_nonzero = -1;
  for (int j = 0; j <= hs.complete_upto; ++j)
    if (hs.coeffs[j] != 0) last_nonzero = j;
  hs.support_enclosed = hs.complete_upto >= 0 && last_nonzero < hs.complete_upto;
  if (up_to) {
    if (*up_to > hs.complete_upto)
      throw std::runtime_error(
          "hilbert_series: table has uncomputed cells inside requested range");
    hs.coeffs.resize(*up_to + 1);
  }
  return hs;
}

}  // namespace lcsq
