#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcsq/exact_linalg.hpp"
#include "lcsq/free_algebra.hpp"

namespace lcsq {

// Spanning family of one homogeneous component, in the coordinate order
// given by monomials_of_multidegree.
struct SpanningSet {
  MultiDegree degree;
  std::vector<Element> vectors;
  std::vector<Word> basis_order;
};

// One table cell. Over Z: free rank plus torsion chain. Over F_p the cell is
// a dimension, stored in rank with empty torsion.
struct TableCell {
  long rank = 0;
  std::vector<Int> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct BigradedTable {
  AlgebraPresentation pres;
  int lcs_index = 2;
  int max_total_degree = 0;
  std::map<MultiDegree, TableCell> cells;  // computed cells only
  std::vector<std::string> warnings;       // e.g. resource-guard skips

  bool computed(const MultiDegree& d) const { return cells.count(d) != 0; }
  TableCell cell_or_zero(const MultiDegree& d) const {
    auto it = cells.find(d);
    return it == cells.end() ? TableCell{} : it->second;
  }
};

struct EngineOptions {
  long max_component_dim = 4096;  // cells above this stay uncomputed
  int threads = 0;                // 0 = hardware concurrency
};

namespace detail {
struct EngineState;
}

// Computes spanning sets of L_i, M_i and the relation ideal per multidegree,
// and the abelian-group (or F_p-dimension) structure of the N_i components.
// Spanning caches grow monotonically; a single engine instance serves many
// queries against one presentation.
class LcsEngine {
 public:
  explicit LcsEngine(AlgebraPresentation pres, EngineOptions opts = {});
  ~LcsEngine();
  LcsEngine(LcsEngine&&) noexcept;
  LcsEngine& operator=(LcsEngine&&) noexcept;

  const AlgebraPresentation& presentation() const;

  // Literal spanning families (free-algebra level; redundancy allowed):
  // L_1 = all monomials, L_i = [monomial, L_{i-1}] over all degree splits,
  // M_i = u * L_i * v, ideal = u * f * v.
  SpanningSet l_spanning_set(int i, const MultiDegree& d);
  SpanningSet m_spanning_set(int i, const MultiDegree& d);
  SpanningSet ideal_spanning_set(const MultiDegree& d);

  // Reduced lattice bases of the spans above (hermite echelon rows in
  // monomial coordinates); span-equal to the literal families.
  std::vector<std::vector<Int>> l_basis(int i, const MultiDegree& d);
  std::vector<std::vector<Int>> m_basis(int i, const MultiDegree& d);
  std::vector<std::vector<Int>> ideal_basis(const MultiDegree& d);

  // Structure of the (i, d) component of N_i = (M_i + I)/(M_{i+1} + I).
  TableCell n_component(int i, const MultiDegree& d);

  // All components with total degree <= bound; cells whose monomial count
  // exceeds the configured cap are left uncomputed with a warning.
  BigradedTable n_table(int i, int max_total_degree);

 private:
  std::unique_ptr<detail::EngineState> st_;
};

// Free-standing spec operations over the free algebra on k generators.
SpanningSet l_spanning_set(int i, const MultiDegree& d, int k);
SpanningSet m_spanning_set(int i, const MultiDegree& d, int k);
SpanningSet ideal_spanning_set(const std::vector<Element>& relations,
                               const MultiDegree& d, int k);
TableCell n_component(const AlgebraPresentation& pres, int i, const MultiDegree& d);
BigradedTable n_table(const AlgebraPresentation& pres, int i, int max_total_degree,
                      EngineOptions opts = {});

// Single-variable Hilbert series of an F_p table: coefficient a sums the
// dimensions of all cells with degree[variable] = a. A coefficient is
// reported only when every cell of that slice inside the triangle is
// computed and the slice's boundary cells (total = bound) are all zero.
struct HilbertSeries {
  std::vector<Int> coeffs;      // indices 0 .. complete_upto
  int complete_upto = -1;       // largest certified coefficient index
  bool support_enclosed = false;  // a fully-zero slice follows the support
};

HilbertSeries hilbert_series(const BigradedTable& table, int variable /*1-based*/,
                             std::optional<int> up_to = std::nullopt);

// All multidegrees on k generators with total degree <= bound, ordered by
// total degree then lexicographically.
std::vector<MultiDegree> degrees_up_to(int k, int bound);

}  // namespace lcsq
