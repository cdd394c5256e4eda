#pragma once

// Built-in worked examples with their published boundary matrices, stored verbatim.

#include <optional>
#include <string>
#include <vector>

#include "diagres/arrangement.hpp"
#include "diagres/fan.hpp"

namespace diagres {

struct ReferenceMatrix {
  std::size_t dim = 0;  // the matrix is d_dim : F_dim -> F_{dim-1}
  std::vector<std::vector<std::string>> entries;
};

struct Fixture {
  std::string name;
  std::string description;
  Fan fan;
  std::vector<std::string> epsilon;           // rational strings, one per ray
  std::optional<std::vector<IntVector>> basis;
  std::vector<int> removed_rays;               // for alternate chamber runs
  std::vector<ReferenceMatrix> reference;      // published boundary maps, possibly partial

  Deformation deformation() const;
};

/// Bl_p P^2 with rays (1,0),(0,1),(-1,1),(0,-1), eps = 0, basis {D2, D3}.
Fixture blowup_plane();
/// Bl_p P^2 with rays (1,0),(1,1),(0,1),(-1,-1) deformed by eps = (1/10, 0, 0, 1/10).
Fixture blowup_plane_deformed();
/// Same fan at eps = 0, used for the Lawrence binomials.
Fixture blowup_plane_undeformed();
/// Same fan deformed by (0, 1/10, 0, 1/10) in the chamber where ray 2 leaves every maximal cone.
Fixture blowup_plane_other_chamber();
/// P^2 blown up twice, eps = 0, basis {D1, D2, D3}.
Fixture twice_blowup();
/// P^1.
Fixture projective_line();

/// The three examples with published matrices, in the order above.
std::vector<Fixture> worked_examples();
/// Every built-in fixture.
std::vector<Fixture> all_fixtures();

/// Fan JSON (0-based indices) for a fixture, including epsilon, basis and removed rays.
std::string fixture_fan_json(const Fixture& f);

}  // namespace diagres
