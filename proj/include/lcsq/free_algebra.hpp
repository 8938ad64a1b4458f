#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcsq/integer.hpp"

namespace lcsq {

// Per-generator degree vector; the bigrading when k = 2.
struct MultiDegree {
  std::vector<int> deg;

  MultiDegree() = default;
  explicit MultiDegree(std::vector<int> d) : deg(std::move(d)) {}
  MultiDegree(std::initializer_list<int> d) : deg(d) {}
  static MultiDegree zero(int k) { return MultiDegree(std::vector<int>(k, 0)); }

  int size() const { return static_cast<int>(deg.size()); }
  int operator[](int j) const { return deg[j]; }
  int& operator[](int j) { return deg[j]; }
  int total() const;
  bool is_zero() const { return total() == 0; }
  bool component_leq(const MultiDegree& o) const;
  MultiDegree plus(const MultiDegree& o) const;
  MultiDegree minus(const MultiDegree& o) const;  // requires o componentwise <= *this

  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
};

std::string to_string(const MultiDegree& d);

// Monomial of the free algebra: sequence of 1-based generator indices.
struct Word {
  std::vector<std::uint8_t> letters;

  Word() = default;
  explicit Word(std::vector<std::uint8_t> l) : letters(std::move(l)) {}

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  MultiDegree multidegree(int k) const;
  Word concat(const Word& o) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Homogeneous integer combination of words of one multidegree. The zero
// element keeps the degree it was constructed with.
struct Element {
  MultiDegree degree;
  std::map<Word, Int> terms;  // no zero coefficients stored

  Element() = default;
  static Element zero(MultiDegree d);
  static Element monomial(const Word& w, int k, Int coeff = 1);

  int gens() const { return degree.size(); }
  bool is_zero() const { return terms.empty(); }
  void add_term(const Word& w, const Int& c);  // cancels to zero silently

  friend bool operator==(const Element& a, const Element& b) {
    return a.terms == b.terms && (a.terms.empty() || a.degree == b.degree);
  }
};

Element add(const Element& a, const Element& b);       // degrees must agree
Element scale(const Element& a, const Int& c);
Element multiply(const Element& a, const Element& b);  // concatenation product
Element bracket(const Element& a, const Element& b);   // ab - ba

// All words of the given multidegree in lexicographic order (x1 < x2 < ...).
// This order is the coordinate system used by every matrix downstream.
std::vector<Word> monomials_of_multidegree(int k, const MultiDegree& d);

// multinomial(total; d1,...,dk) = number of words of multidegree d.
Int multidegree_count(const MultiDegree& d);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownGenerator, Inhomogeneous };

  ParseError(Kind kind, std::size_t pos, const std::string& msg);
  Kind kind() const { return kind_; }
  std::size_t position() const { return pos_; }

 private:
  Kind kind_;
  std::size_t pos_;
};

// Grammar: signed integer coefficients, generator tokens x1..xk, '^' powers,
// '*' products (juxtaposition also allowed), '+'/'-' between terms.
// Inhomogeneous sums are rejected with ParseError::Kind::Inhomogeneous.
Element parse_element(std::string_view src, int k);

// Canonical rendering: terms in word order, factors "x<i>^<e>" joined by '*'
// (exponent omitted when 1). parse_element(render_element(e), k) == e.
std::string render_element(const Element& e);

// Coefficient ring of a presentation: Z or a prime field.
struct Ring {
  bool is_fp = false;
  long p = 0;

  static Ring integers() { return Ring{}; }
  static Ring prime_field(long p);

  std::string name() const;             // "Z" or "Fp:<p>"
  static Ring parse(std::string_view);  // inverse of name()

  friend bool operator==(const Ring&, const Ring&) = default;
};

struct AlgebraPresentation {
  int gens = 0;
  Ring ring;
  std::vector<Element> relations;  // homogeneous

  void validate() const;  // throws std::invalid_argument on a bad presentation
};

}  // namespace lcsq
