#pragma once

#include <optional>
#include <span>

#include "diagres/rational.hpp"

namespace diagres {

/// Smith normal form U*A*V = D with U, V unimodular and d1 | d2 | ... >= 0.
struct SnfResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;

  /// Diagonal entries of D, min(rows, cols) of them.
  IntVector diagonal() const;
};

/// Pivot rule: smallest nonzero absolute value, ties broken by lowest (row, col).
SnfResult smith_normal_form(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Int determinant(const IntMatrix& a);
Rat determinant(const RatMatrix& a);

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RatVector> kernel;  // basis read off the reduced row echelon form
};

RankKernel rank_and_kernel(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);

/// A particular solution of a*x = b (free variables set to zero), or nullopt when inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b);

/// Inverse of a square integer matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Linear feasibility by Fourier-Motzkin elimination.

enum class Relation { Less, LessEqual, Equal };

/// coeffs . x  (rel)  rhs
struct LinearConstraint {
  RatVector coeffs;
  Relation rel = Relation::LessEqual;
  Rat rhs;
};

LinearConstraint less(RatVector coeffs, Rat rhs);
LinearConstraint less_equal(RatVector coeffs, Rat rhs);
LinearConstraint greater(RatVector coeffs, Rat rhs);
LinearConstraint greater_equal(RatVector coeffs, Rat rhs);
LinearConstraint equal(RatVector coeffs, Rat rhs);

bool satisfies(const LinearConstraint& c, const RatVector& x);

/// A point satisfying every constraint, or nullopt when the system is infeasible.
/// Back-substitution picks interval midpoints, so strict constraints hold strictly.
std::optional<RatVector> feasible_point(std::span<const LinearConstraint> constraints, std::size_t dim);

}  // namespace diagres
