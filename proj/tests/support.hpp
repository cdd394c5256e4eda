#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "diagres/arrangement.hpp"
#include "diagres/complex.hpp"
#include "diagres/fan.hpp"
#include "diagres/fixtures.hpp"
#include "diagres/verify.hpp"

namespace support {

using namespace diagres;

struct Pipeline {
  ExactSeq seq;
  QuotientComplex qc;
  GradedFreeComplex complex;  // canonicalized
  std::vector<Cone> cones;
  bool undeformed = true;
};

inline Pipeline run(const Fan& fan, const Deformation& eps, const std::optional<std::vector<IntVector>>& basis = std::nullopt,
                    const std::vector<int>& removed = {}) {
  Pipeline p;
  p.seq = basis ? fundamental_sequence(fan, basis) : fundamental_sequence(fan);
  p.qc = enumerate_cells(p.seq, eps);
  p.complex = canonicalize(build_complex(p.qc, p.seq));
  p.cones = removed.empty() ? fan.max_cones : chamber_cones(fan, removed);
  for (const auto& v : eps.a) p.undeformed = p.undeformed && v == 0;
  return p;
}

inline Pipeline run(const Fixture& f) { return run(f.fan, f.deformation(), f.basis, f.removed_rays); }

inline IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

// Smooth complete surface fans: start from P^2 or a Hirzebruch surface, blow up random
// torus-fixed points (insert r_i + r_{i+1}), then apply a random element of GL_2(Z).
// Rays stay in cyclic order, so the maximal cones are consecutive pairs.
inline Fan random_surface_fan(std::mt19937_64& rng, int max_blowups = 3) {
  using Ray = std::array<std::int64_t, 2>;
  std::vector<Ray> rays;
  if (rng() % 2 == 0) {
    rays = {{{1, 0}, {0, 1}, {-1, -1}}};
  } else {
    std::int64_t a = static_cast<std::int64_t>(rng() % 3);
    rays = {{{1, 0}, {0, 1}, {-1, a}, {0, -1}}};
  }
  int blowups = static_cast<int>(rng() % static_cast<unsigned>(max_blowups + 1));
  for (int k = 0; k < blowups; ++k) {
    std::size_t i = rng() % rays.size();
    const Ray& r = rays[i];
    const Ray& s = rays[(i + 1) % rays.size()];
    rays.insert(rays.begin() + static_cast<std::ptrdiff_t>(i + 1), Ray{r[0] + s[0], r[1] + s[1]});
  }

  std::array<std::int64_t, 4> g = {1, 0, 0, 1};
  int steps = static_cast<int>(rng() % 4);
  for (int k = 0; k < steps; ++k) {
    std::int64_t t = (rng() % 2 == 0) ? 1 : -1;
    std::array<std::int64_t, 4> e = (rng() % 2 == 0) ? std::array<std::int64_t, 4>{1, t, 0, 1}
                                                     : std::array<std::int64_t, 4>{1, 0, t, 1};
    g = {g[0] * e[0] + g[1] * e[2], g[0] * e[1] + g[1] * e[3], g[2] * e[0] + g[3] * e[2], g[2] * e[1] + g[3] * e[3]};
  }
  if (rng() % 2 == 0) g = {g[1], g[0], g[3], g[2]};  // det -1

  Fan fan;
  fan.m = 2;
  for (const auto& r : rays) fan.rays.push_back({g[0] * r[0] + g[1] * r[1], g[2] * r[0] + g[3] * r[1]});
  int n = static_cast<int>(rays.size());
  for (int i = 0; i + 1 < n; ++i) fan.max_cones.push_back({i, i + 1});
  fan.max_cones.push_back({0, n - 1});
  return fan;
}

}  // namespace support
