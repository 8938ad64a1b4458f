#include "lcsq/free_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace lcsq {

int MultiDegree::total() const {
  return std::accumulate(deg.begin(), deg.end(), 0);
}

bool MultiDegree::component_leq(const MultiDegree& o) const {
  if (deg.size() != o.deg.size()) return false;
  for (std::size_t j = 0; j < deg.size(); ++j)
    if (deg[j] > o.deg[j]) return false;
  return true;
}

MultiDegree MultiDegree::plus(const MultiDegree& o) const {
  MultiDegree r = *this;
  for (std::size_t j = 0; j < deg.size(); ++j) r.deg[j] += o.deg[j];
  return r;
}

MultiDegree MultiDegree::minus(const MultiDegree& o) const {
  MultiDegree r = *this;
  for (std::size_t j = 0; j < deg.size(); ++j) r.deg[j] -= o.deg[j];
  return r;
}

std::string to_string(const MultiDegree& d) {
  std::string s = "(";
  for (int j = 0; j < d.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(d[j]);
  }
  return s + ")";
}

MultiDegree Word::multidegree(int k) const {
  MultiDegree d = MultiDegree::zero(k);
  for (std::uint8_t g : letters) d.deg[g - 1] += 1;
  return d;
}

Word Word::concat(const Word& o) const {
  Word r = *this;
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (std::uint8_t c : w.letters) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Element Element::zero(MultiDegree d) {
  Element e;
  e.degree = std::move(d);
  return e;
}

Element Element::monomial(const Word& w, int k, Int coeff) {
  Element e;
  e.degree = w.multidegree(k);
  if (coeff != 0) e.terms.emplace(w, std::move(coeff));
  return e;
}

void Element::add_term(const Word& w, const Int& c) {
  if (c == 0) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

Element add(const Element& a, const Element& b) {
  if (!a.terms.empty() && !b.terms.empty() && a.degree != b.degree)
    throw std::invalid_argument("add: elements of different multidegree");
  Element r = a;
  if (r.terms.empty()) r.degree = b.degree;
  for (const auto& [w, c] : b.terms) r.add_term(w, c);
  return r;
}

Element scale(const Element& a, const Int& c) {
  Element r = Element::zero(a.degree);
  if (c == 0) return r;
  for (const auto& [w, coeff] : a.terms) r.terms.emplace(w, coeff * c);
  return r;
}

Element multiply(const Element& a, const Element& b) {
  Element r = Element::zero(a.degree.plus(b.degree));
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) r.add_term(wa.concat(wb), ca * cb);
  return r;
}

Element bracket(const Element& a, const Element& b) {
  Element r = Element::zero(a.degree.plus(b.degree));
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      Int c = ca * cb;
      r.add_term(wa.concat(wb), c);
      r.add_term(wb.concat(wa), -c);
    }
  return r;
}

std::vector<Word> monomials_of_multidegree(int k, const MultiDegree& d) {
  if (d.size() != k) throw std::invalid_argument("multidegree size != gens");
  std::vector<std::uint8_t> letters;
  for (int j = 0; j < k; ++j) {
    if (d[j] < 0) throw std::invalid_argument("negative multidegree entry");
    letters.insert(letters.end(), d[j], static_cast<std::uint8_t>(j + 1));
  }
  std::vector<Word> out;
  // letters is sorted; next_permutation walks the words in lex order.
  do {
    out.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

Int multidegree_count(const MultiDegree& d) {
  Int r = 1;
  long got = 0;
  for (int j = 0; j < d.size(); ++j) {
    got += d[j];
    r *= int_binomial(got, d[j]);
  }
  return r;
}

ParseError::ParseError(Kind kind, std::size_t pos, const std::string& msg)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
      kind_(kind),
      pos_(pos) {}

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  int k;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, pos, msg);
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return Int(std::string(src.substr(start, pos - start)));
  }

  // x<digits>, validated against the generator count
  int generator() {
    skip_ws();
    std::size_t start = pos;
    ++pos;  // 'x'
    std::size_t dstart = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == dstart) fail("expected generator index after 'x'");
    long idx = std::stol(std::string(src.substr(dstart, pos - dstart)));
    if (idx < 1 || idx > k)
      throw ParseError(ParseError::Kind::UnknownGenerator, start,
                       "unknown generator x" + std::to_string(idx) +
                           " (algebra has " + std::to_string(k) + ")");
    return static_cast<int>(idx);
  }

  // [int] [factor {('*')? factor}] with factor = x<i>['^'<e>]
  Element term() {
    Int coeff = 1;
    bool have_any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = integer();
      have_any = true;
    }
    Word w;
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        c = peek();
        if (c != 'x') fail("expected generator after '*'");
      }
      if (c != 'x') break;
      int g = generator();
      Int e = 1;
      if (peek() == '^') {
        ++pos;
        std::size_t epos = pos;
        e = integer();
        if (e < 1)
          throw ParseError(ParseError::Kind::Syntax, epos, "exponent must be >= 1");
        if (e > 100000)
          throw ParseError(ParseError::Kind::Syntax, epos, "exponent too large");
      }
      for (Int i = 0; i < e; ++i) w.letters.push_back(static_cast<std::uint8_t>(g));
      have_any = true;
    }
    if (!have_any) fail("expected term");
    return Element::monomial(w, k, coeff);
  }
};

}  // namespace

Element parse_element(std::string_view src, int k) {
  if (k < 1 || k > 200) throw std::invalid_argument("generator count out of range");
  Parser p{src, 0, k};
  Element acc = Element::zero(MultiDegree::zero(k));
  bool first = true;
  bool any_term = false;
  while (!p.eof()) {
    int sign = 1;
    char c = p.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++p.pos;
    } else if (!first) {
      p.fail("expected '+' or '-' between terms");
    }
    std::size_t term_pos = p.pos;
    Element t = p.term();
    if (!t.is_zero() && any_term && t.degree != acc.degree)
      throw ParseError(ParseError::Kind::Inhomogeneous, term_pos,
                       "inhomogeneous sum: term of degree " + to_string(t.degree) +
                           " after degree " + to_string(acc.degree));
    if (!any_term && !t.is_zero()) {
      acc.degree = t.degree;
      any_term = true;
    }
    acc = add(acc, sign < 0 ? scale(t, -1) : t);
    first = false;
  }
  if (first) p.fail("empty input");
  return acc;
}

std::string render_element(const Element& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms) {
    Int a = c;
    if (a < 0) {
      os << (first ? "-" : " - ");
      a = -a;
    } else if (!first) {
      os << " + ";
    }
    bool need_coeff = (a != 1) || w.empty();
    if (need_coeff) os << a.get_str();
    // group the word into maximal runs x<i>^<e>
    std::size_t i = 0;
    bool first_factor = true;
    while (i < w.letters.size()) {
      std::size_t j = i;
      while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
      if (!first_factor || need_coeff) os << "*";
      os << "x" << static_cast<int>(w.letters[i]);
      if (j - i > 1) os << "^" << (j - i);
      first_factor = false;
      i = j;
    }
    first = false;
  }
  return os.str();
}

Ring Ring::prime_field(long p) {
  if (!lcsq::is_prime(p)) throw std::invalid_argument("Fp modulus must be prime");
  Ring r;
  r.is_fp = true;
  r.p = p;
  return r;
}

std::string Ring::name() const {
  return is_fp ? "Fp:" + std::to_string(p) : "Z";
}

Ring Ring::parse(std::string_view s) {
  if (s == "Z") return integers();
  if (s.rfind("Fp:", 0) == 0) {
    long p = std::stol(std::string(s.substr(3)));
    return prime_field(p);
  }
  throw std::invalid_argument("unsupported ring '" + std::string(s) +
                              "' (expected Z or Fp:<p>)");
}

void AlgebraPresentation::validate() const {
  if (gens < 1) throw std::invalid_argument("presentation needs >= 1 generator");
  if (ring.is_fp && !lcsq::is_prime(ring.p))
    throw std::invalid_argument("Fp modulus must be prime");
  for (const Element& f : relations) {
    if (f.gens() != gens)
      throw std::invalid_argument("relation over wrong generator count");
    if (f.is_zero()) throw std::invalid_argument("zero relation");
  }
}

}  // namespace lcsq
