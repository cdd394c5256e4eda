#pragma once

// The Cl(X x X)-graded free complex supported on the quotient cell complex.

#include <string>
#include <vector>

#include <json.hpp>

#include "diagres/arrangement.hpp"
#include "diagres/fan.hpp"
#include "diagres/monomial.hpp"

namespace diagres {

struct Generator {
  std::size_t cell = 0;  // cell id within its dimension
  LaurentMonomial label;
  ClDegree degree;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// One signed monomial contribution to entry (row, col). Several terms may share an entry,
/// e.g. an edge whose two endpoints are the same vertex class.
struct BoundaryTerm {
  std::size_t row = 0;
  std::size_t col = 0;
  int sign = 1;
  LaurentMonomial monomial;

  friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

struct BoundaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BoundaryTerm> terms;

  Polynomial entry(std::size_t row, std::size_t col, std::size_t n) const;
  friend bool operator==(const BoundaryMatrix&, const BoundaryMatrix&) = default;
};

struct GradedFreeComplex {
  std::size_t n = 0;                                // variables per factor
  std::vector<std::vector<Generator>> generators;  // by homological index 0..top
  std::vector<BoundaryMatrix> boundaries;         // boundaries[d-1] is d_d : F_d -> F_{d-1}

  std::vector<std::size_t> ranks() const;
  std::size_t top() const { return generators.empty() ? 0 : generators.size() - 1; }
  const BoundaryMatrix& boundary(std::size_t d) const { return boundaries.at(d - 1); }
  BoundaryMatrix& boundary(std::size_t d) { return boundaries.at(d - 1); }

  friend bool operator==(const GradedFreeComplex&, const GradedFreeComplex&) = default;
};

/// B t as an exponent vector.
ExponentVector lattice_vector(const IntMatrix& B, const Shift& t);

/// Monomial label of every cell (indexed like qc.cells): floor labels on vertices, Laurent lcm
/// of the translated closure-vertex labels on higher cells.
std::vector<std::vector<LaurentMonomial>> cell_labels(const QuotientComplex& qc);

/// Assembles the complex. Throws std::logic_error if some face ratio is not a polynomial.
GradedFreeComplex build_complex(const QuotientComplex& qc, const ExactSeq& seq);

struct Binomial {
  LaurentMonomial plus;
  LaurentMonomial minus;

  Polynomial polynomial() const;
  /// Exponent difference a - b where the binomial is x^a y^b - x^b y^a.
  ExponentVector difference() const;
};

/// Binomials read off the columns of d_1 after multiplying each entry by its row label.
std::vector<Binomial> jl_binomials(const GradedFreeComplex& c);

/// Sorts generators by (degree, x+y exponent key, label text, cell id) and fixes column signs so
/// that the leading term of the first nonzero entry is positive.
GradedFreeComplex canonicalize(const GradedFreeComplex& c);

nlohmann::json monomial_to_json(const LaurentMonomial& mon);
LaurentMonomial monomial_from_json(const nlohmann::json& j, std::size_t n);
nlohmann::json complex_to_json(const GradedFreeComplex& c);
GradedFreeComplex complex_from_json(const nlohmann::json& j);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix to_poly_matrix(const BoundaryMatrix& m, std::size_t n);
/// Parses a matrix of polynomial strings such as {{"x2*y4", "x4*y2"}, {"y1", "x1"}}.
PolyMatrix parse_poly_matrix(const std::vector<std::vector<std::string>>& rows, std::size_t n);

/// Result of comparing matrices up to signed permutations of generators.
struct MatchResult {
  bool matched = false;
  bool shared_ordering = false;  // one generator order valid across all matrices at once
  std::string detail;
};

/// Tries to find permutations and per-generator signs carrying `reference` onto `ours`.
/// Matrices are consecutive maps (reference[k] has the columns of reference[k+1] as rows).
/// A common ordering for all matrices is tried first; failing that, each matrix is matched
/// independently and the result says so.
MatchResult match_signed_permutation(const std::vector<PolyMatrix>& ours, const std::vector<PolyMatrix>& reference);

}  // namespace diagres
