#pragma once

// The deformed periodic arrangement {p_i in Z} on the affine plane p = Bz + a, and its
// finite quotient by the translation action z -> z + Z^m.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "diagres/fan.hpp"
#include "diagres/rational.hpp"

namespace diagres {

struct Deformation {
  RatVector a;  // one shift per ambient coordinate

  static Deformation zero(std::size_t n) { return {RatVector(n, Rat(0))}; }
};

/// Position of a cell relative to the hyperplanes of one coordinate:
/// on p_i = j (at) or inside j < p_i < j + 1.
struct SigEntry {
  bool at = false;
  std::int64_t j = 0;

  friend auto operator<=>(const SigEntry&, const SigEntry&) = default;
  friend bool operator==(const SigEntry&, const SigEntry&) = default;
};

using Signature = std::vector<SigEntry>;
using Shift = std::vector<std::int64_t>;  // element of Z^m acting on z

std::string to_string(const Signature& sig);

/// p = Bz + a.
RatVector ambient_point(const IntMatrix& B, const RatVector& a, const RatVector& z);

/// Signature of the cell containing z.
Signature point_signature(const IntMatrix& B, const RatVector& a, const RatVector& z);

/// True when z satisfies the equalities of `sig` exactly and its open inequalities strictly.
bool satisfies_signature(const IntMatrix& B, const RatVector& a, const Signature& sig, const RatVector& z);

/// Signature of the same cell moved by z -> z + t.
Signature shift_signature(const IntMatrix& B, const Signature& sig, const Shift& t);

/// Vertices of the closure of the cell, sorted lexicographically. Empty if the cell is empty.
std::vector<RatVector> closure_vertices(const IntMatrix& B, const RatVector& a, const Signature& sig);

/// Orbit representative of a cell: among all translates, the one whose lexicographically
/// smallest closure vertex lies in [0,1)^m. `shift` moves the representative back to the input.
struct CanonicalForm {
  Signature signature;
  Shift shift;
};
CanonicalForm canonical_form(const IntMatrix& B, const RatVector& a, const Signature& sig);

/// A face (or closure vertex) of a cell: the stored representative of `cell`, translated by `shift`.
struct CellRef {
  std::size_t cell = 0;
  Shift shift;
  int sign = 0;  // incidence sign for codim-1 faces; unused for vertex refs

  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct Cell {
  std::size_t dim = 0;
  Signature signature;  // canonical representative
  RatVector sample_point;
  std::vector<RatVector> directions;  // oriented basis of the cell's linear span
  std::vector<CellRef> vertices;      // closure vertices of the representative
  std::vector<CellRef> faces;         // codim-1 faces with orientation signs
  std::vector<CellRef> cofaces;       // cells having this one as a face; shift locates the coface
};

struct QuotientComplex {
  std::size_t m = 0;
  std::size_t n = 0;
  IntMatrix B;
  RatVector a;
  std::vector<std::vector<Cell>> cells;  // cells[d] are the d-dimensional classes

  std::vector<std::size_t> counts() const;
  long euler_characteristic() const;
  /// z-coordinates of the stored vertex representative (inside [0,1)^m).
  const RatVector& vertex_point(std::size_t vertex) const { return cells[0][vertex].sample_point; }
  RatVector vertex_ambient(std::size_t vertex) const { return ambient_point(B, a, vertex_point(vertex)); }
  /// Find a cell id by canonical signature; throws std::out_of_range if absent.
  std::size_t find(std::size_t dim, const Signature& sig) const;
};

/// All cells of the arrangement modulo Z^m with the face poset, orientations and shifts.
/// Supports m <= 3; throws std::invalid_argument otherwise.
QuotientComplex enumerate_cells(const ExactSeq& seq, const Deformation& eps);

struct TransversalityReport {
  bool transversal = true;
  std::vector<std::string> violations;
};
TransversalityReport transversality_report(const QuotientComplex& qc);

/// Ambient coordinates of the vertex with the given signature (At rows solved for z).
RatVector vertex_ambient_coords(const ExactSeq& seq, const Deformation& eps, const Signature& vertex);

}  // namespace diagres
