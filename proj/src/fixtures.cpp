#include "diagres/fixtures.hpp"

#include <json.hpp>

namespace diagres {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Int(0));
  v[i] = 1;
  return v;
}

}  // namespace

Deformation Fixture::deformation() const {
  Deformation d;
  for (const auto& s : epsilon) d.a.push_back(parse_rat(s));
  return d;
}

Fixture blowup_plane() {
  Fixture f;
  f.name = "blowup-plane";
  f.description = "Bl_p P^2, rays (1,0),(0,1),(-1,1),(0,-1), eps = 0";
  f.fan = {2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  f.epsilon = {"0", "0", "0", "0"};
  f.basis = std::vector<IntVector>{unit(4, 1), unit(4, 2)};
  f.reference = {
      {1, {{"x3*y1-x1*y3", "x4*y2*y3 - x2*x3*y4", "x1*x2*y4 - x4*y1*y2"}}},
      {2, {{"x2*y4", "x4*y2"}, {"y1", "x1"}, {"y3", "x3"}}},
  };
  return f;
}

Fixture blowup_plane_deformed() {
  Fixture f;
  f.name = "blowup-plane-deformed";
  f.description = "Bl_p P^2, rays (1,0),(1,1),(0,1),(-1,-1), eps = (1/10,0,0,1/10)";
  f.fan = {2, {{1, 0}, {1, 1}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  f.epsilon = {"1/10", "0", "0", "1/10"};
  // Rows v4, v3, v2, v1, v0; columns E0..E9, as printed.
  f.reference = {
      {1,
       {{"0", "0", "0", "0", "1", "-1", "0", "x3*y4", "0", "-x3*y1"},
        {"0", "1", "-y2", "0", "0", "1", "0", "0", "-x3*y1", "0"},
        {"0", "0", "0", "1", "-1", "0", "-x1*y4", "0", "0", "x1*y3"},
        {"y2", "-1", "0", "-1", "0", "0", "0", "0", "x1*y3", "0"},
        {"-x2", "0", "x2", "0", "0", "0", "x4*y1", "-x4*y3", "0", "0"}}},
  };
  return f;
}

Fixture blowup_plane_undeformed() {
  Fixture f = blowup_plane_deformed();
  f.name = "blowup-plane-undeformed";
  f.description = "Bl_p P^2, rays (1,0),(1,1),(0,1),(-1,-1), eps = 0";
  f.epsilon = {"0", "0", "0", "0"};
  f.reference.clear();
  return f;
}

Fixture blowup_plane_other_chamber() {
  Fixture f = blowup_plane_deformed();
  f.name = "blowup-plane-other-chamber";
  f.description = "Bl_p P^2, rays (1,0),(1,1),(0,1),(-1,-1), eps = (0,1/10,0,1/10), ray 2 removed";
  f.epsilon = {"0", "1/10", "0", "1/10"};
  f.removed_rays = {1};
  f.reference.clear();
  return f;
}

Fixture twice_blowup() {
  Fixture f;
  f.name = "twice-blowup";
  f.description = "P^2 blown up twice, rays e1, e1+e2, e2, -e1+e2, -e2, eps = 0";
  f.fan = {2, {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}};
  f.epsilon = {"0", "0", "0", "0", "0"};
  f.basis = std::vector<IntVector>{unit(5, 0), unit(5, 1), unit(5, 2)};
  f.reference = {
      {1,
       {{"x4*y1*y2 - x1*x2*y4", "-x4*y1*y5", "x2*y5", "x2*x3*x4*y5 - x5*y2*y3*y4", "y1*y2*y3", "y3*y4"},
        {"0", "x1*x5*y4", "-x5*y2", "0", "-x1*x2*x3", "-x3*x4"}}},
      {2,
       {{"0", "0", "x1*x2", "-x5*y2"},
        {"0", "x5*y4", "-x4", "0"},
        {"0", "y1", "0", "-1"},
        {"x1*y4", "0", "0", "x3*x4"},
        {"y2", "x2*x3", "0", "0"},
        {"y5", "0", "y3", "0"}}},
  };
  return f;
}

Fixture projective_line() {
  Fixture f;
  f.name = "projective-line";
  f.description = "P^1, rays 1 and -1, eps = 0";
  f.fan = {1, {{1}, {-1}}, {{0}, {1}}};
  f.epsilon = {"0", "0"};
  return f;
}

std::vector<Fixture> worked_examples() { return {blowup_plane(), blowup_plane_deformed(), twice_blowup()}; }

std::vector<Fixture> all_fixtures() {
  return {blowup_plane(),     blowup_plane_deformed(), blowup_plane_undeformed(), blowup_plane_other_chamber(),
          twice_blowup(),     projective_line()};
}

std::string fixture_fan_json(const Fixture& f) {
  nlohmann::json j;
  j["m"] = f.fan.m;
  j["rays"] = f.fan.rays;
  j["max_cones"] = f.fan.max_cones;
  j["epsilon"] = f.epsilon;
  if (f.basis) {
    std::vector<std::vector<long>> basis;
    for (const auto& v : *f.basis) {
      std::vector<long> row;
      for (const auto& e : v) row.push_back(e.get_si());
      basis.push_back(row);
    }
    j["cl_basis"] = basis;
  }
  if (!f.removed_rays.empty()) j["removed_rays"] = f.removed_rays;
  return j.dump(2) + "\n";
}

}  // namespace diagres
