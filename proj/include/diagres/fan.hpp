#pragma once

// Complete smooth fans, the exact sequence 0 -> Z^m -B-> Z^n -pi-> Cl(X) -> 0,
// and irrelevant ideals of X x X.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagres/rational.hpp"

namespace diagres {

/// Raised for inputs that are not admissible fans (non-primitive rays, dependent cones, ...).
class FanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cone = std::vector<int>;  // sorted ray indices, 0-based

struct Fan {
  int m = 0;
  std::vector<std::vector<std::int64_t>> rays;
  std::vector<Cone> max_cones;

  std::size_t n() const { return rays.size(); }
};

struct FanClassification {
  bool complete = false;
  bool completeness_checked = false;  // only decided for m <= 3
  bool smooth = false;
  bool unimodular = false;
  bool simplicial = false;
};

/// Checks the structural invariants (throws FanError) and classifies the fan.
FanClassification validate_fan(const Fan& fan);

/// The n x m matrix whose rows are the rays.
IntMatrix ray_matrix(const Fan& fan);

struct ExactSeq {
  IntMatrix B;                            // n x m
  std::size_t cl_rank = 0;
  IntVector cl_torsion;                   // invariant factors > 1 (always empty once accepted)
  IntMatrix pi;                           // cl_rank x n, coordinates in the chosen basis
  std::vector<IntVector> basis_divisors;  // divisors in Z^n whose classes form the basis

  std::size_t n() const { return B.rows(); }
  std::size_t m() const { return B.cols(); }
  IntVector project(const IntVector& divisor) const { return pi.apply(divisor); }
  /// True when v lies in L = im(B).
  bool in_lattice(const IntVector& v) const;
};

/// Builds B, presents Cl(X) through the Smith normal form and fixes a basis.
/// Without an explicit basis the lexicographically first set of rays whose classes form a
/// Z-basis is used. Throws FanError when B has dependent columns, Cl(X) has torsion, or the
/// supplied basis is not a Z-basis of Cl(X).
ExactSeq fundamental_sequence(const Fan& fan, const std::optional<std::vector<IntVector>>& basis = std::nullopt);

/// Squarefree monomial ideal given by generator supports (variable indices, 0-based).
struct IrrelevantIdeal {
  std::vector<std::vector<int>> generators;  // one per maximal cone: rays not in the cone

  /// Minimal primes, each as the set of variables generating it.
  std::vector<std::vector<int>> minimal_primes() const;
};

/// Generator for the cone sigma: the product of x_rho over rays rho not in sigma.
IrrelevantIdeal irrelevant_ideal(std::size_t n, const std::vector<Cone>& max_cones);
IrrelevantIdeal irrelevant_ideal(const Fan& fan);

/// Maximal cones of the complete simplicial fan spanned by the rays that remain after
/// removing `removed` (m <= 2). Throws FanError when no such fan exists.
std::vector<Cone> chamber_cones(const Fan& fan, const std::vector<int>& removed);

/// Irrelevant ideal of the chamber fan; removed rays divide every generator.
IrrelevantIdeal alternate_chamber_irrelevant(const Fan& fan, const std::vector<int>& removed);

/// "<x1,x3> \cap <x2,x4>"-style rendering of the prime decomposition in variable `var`.
std::string prime_decomposition_string(const IrrelevantIdeal& ideal, char var);
/// Decomposition of the ideal of X x X generated by products of x- and y-generators.
std::string product_decomposition_string(const IrrelevantIdeal& ideal);
/// "<x3*x4, x1*x4, ...>"
std::string generators_string(const IrrelevantIdeal& ideal, char var);

}  // namespace diagres
