#include "diagres/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "diagres/linalg.hpp"

namespace diagres {

IntMatrix ray_matrix(const Fan& fan) {
  IntMatrix b(fan.n(), static_cast<std::size_t>(fan.m));
  for (std::size_t i = 0; i < fan.n(); ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(fan.m); ++j) b(i, j) = Int(static_cast<long>(fan.rays[i][j]));
  return b;
}

namespace {

IntMatrix cone_matrix(const IntMatrix& b, const Cone& cone) {
  std::vector<std::size_t> rows(cone.begin(), cone.end());
  return b.select_rows(rows);
}

// Every wall of a maximal cone is shared by exactly one other maximal cone on its far side.
// Together with closedness this forces the union of the cones to be all of R^m.
bool walls_are_two_sided(const Fan& fan, const IntMatrix& b) {
  const auto m = static_cast<std::size_t>(fan.m);
  for (const auto& cone : fan.max_cones)
    if (cone.size() != m) return false;

  for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
    const Cone& cone = fan.max_cones[ci];
    for (int dropped : cone) {
      Cone wall;
      for (int r : cone)
        if (r != dropped) wall.push_back(r);
      std::vector<std::size_t> neighbours;
      for (std::size_t cj = 0; cj < fan.max_cones.size(); ++cj) {
        if (cj == ci) continue;
        const Cone& other = fan.max_cones[cj];
        if (std::includes(other.begin(), other.end(), wall.begin(), wall.end())) neighbours.push_back(cj);
      }
      if (neighbours.size() != 1) return false;
      int far_ray = -1;
      for (int r : fan.max_cones[neighbours[0]])
        if (!std::binary_search(wall.begin(), wall.end(), r)) far_ray = r;

      RatMatrix wall_rows = to_rat(cone_matrix(b, wall));
      if (wall.empty()) wall_rows = RatMatrix(0, m);
      auto rk = rank_and_kernel(wall_rows);
      if (rk.kernel.size() != 1) return false;
      const RatVector& normal = rk.kernel.front();
      Rat near_side = 0, far_side = 0;
      for (std::size_t k = 0; k < m; ++k) {
        near_side += normal[k] * Rat(b(static_cast<std::size_t>(dropped), k));
        far_side += normal[k] * Rat(b(static_cast<std::size_t>(far_ray), k));
      }
      if (sign(near_side) == 0 || sign(near_side) * sign(far_side) != -1) return false;
    }
  }
  return true;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FanClassification validate_fan(const Fan& fan) {
  if (fan.m < 1) throw FanError("fan: lattice rank must be positive");
  const auto m = static_cast<std::size_t>(fan.m);
  if (fan.rays.empty()) throw FanError("fan: no rays");
  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t i = 0; i < fan.n(); ++i) {
    const auto& ray = fan.rays[i];
    if (ray.size() != m) throw FanError("fan: ray " + std::to_string(i) + " has the wrong length");
    Int g = 0;
    for (auto v : ray) g = gcd(g, Int(static_cast<long>(v)));
    if (g != 1) throw FanError("fan: ray " + std::to_string(i) + " is not primitive");
    if (!seen.insert(ray).second) throw FanError("fan: ray " + std::to_string(i) + " is repeated");
  }

  const IntMatrix b = ray_matrix(fan);
  std::vector<bool> covered(fan.n(), false);
  FanClassification out;
  out.simplicial = true;
  out.smooth = true;
  for (const auto& cone : fan.max_cones) {
    if (cone.empty()) throw FanError("fan: empty maximal cone");
    if (!std::is_sorted(cone.begin(), cone.end()) || std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw FanError("fan: maximal cone indices must be strictly increasing");
    for (int r : cone) {
      if (r < 0 || static_cast<std::size_t>(r) >= fan.n()) throw FanError("fan: maximal cone references a missing ray");
      covered[static_cast<std::size_t>(r)] = true;
    }
    IntMatrix gens = cone_matrix(b, cone);
    if (rank(to_rat(gens)) != cone.size()) throw FanError("fan: maximal cone has dependent generators");
    if (cone.size() != m || abs(determinant(gens)) != 1) out.smooth = false;
  }
  for (std::size_t i = 0; i < fan.n(); ++i)
    if (!covered[i]) throw FanError("fan: ray " + std::to_string(i) + " lies in no maximal cone");

  out.unimodular = rank(to_rat(b)) == m;
  if (out.unimodular) {
    for_each_subset(fan.n(), m, [&](const std::vector<std::size_t>& rows) {
      if (!out.unimodular) return;
      if (abs(determinant(b.select_rows(rows))) > 1) out.unimodular = false;
    });
  }

  if (m <= 3) {
    out.completeness_checked = true;
    out.complete = walls_are_two_sided(fan, b);
  }
  return out;
}

bool ExactSeq::in_lattice(const IntVector& v) const {
  if (v.size() != n()) return false;
  auto w = solve_linear(to_rat(B), to_rat(v));
  if (!w) return false;
  return std::all_of(w->begin(), w->end(), [](const Rat& x) { return is_integer(x); });
}

ExactSeq fundamental_sequence(const Fan& fan, const std::optional<std::vector<IntVector>>& basis) {
  ExactSeq seq;
  seq.B = ray_matrix(fan);
  const std::size_t n = seq.B.rows();
  const std::size_t m = seq.B.cols();
  if (rank(to_rat(seq.B)) != m) throw FanError("fan: B has dependent columns (torus factor)");

  SnfResult snf = smith_normal_form(seq.B);
  for (const Int& d : snf.diagonal())
    if (d > 1) seq.cl_torsion.push_back(d);
  if (!seq.cl_torsion.empty()) throw FanError("fan: Cl(X) has torsion, which is not supported");

  seq.cl_rank = n - m;
  const std::size_t r = seq.cl_rank;
  IntMatrix pi_snf(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) pi_snf(i, j) = snf.U(m + i, j);

  if (basis) {
    if (basis->size() != r) throw FanError("basis: expected " + std::to_string(r) + " divisors");
    IntMatrix change(r, r);
    for (std::size_t k = 0; k < r; ++k) {
      if ((*basis)[k].size() != n) throw FanError("basis: divisor has the wrong length");
      IntVector image = pi_snf.apply((*basis)[k]);
      for (std::size_t i = 0; i < r; ++i) change(i, k) = image[i];
    }
    if (abs(determinant(change)) != 1) throw FanError("basis: classes do not form a Z-basis of Cl(X)");
    seq.pi = unimodular_inverse(change) * pi_snf;
    seq.basis_divisors = *basis;
    return seq;
  }

  std::optional<std::vector<std::size_t>> chosen;
  for_each_subset(n, r, [&](const std::vector<std::size_t>& cols) {
    if (chosen) return;
    IntMatrix sub(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) sub(i, k) = pi_snf(i, cols[k]);
    if (abs(determinant(sub)) == 1) chosen = cols;
  });

  if (chosen) {
    IntMatrix change(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) change(i, k) = pi_snf(i, (*chosen)[k]);
    seq.pi = unimodular_inverse(change) * pi_snf;
    for (std::size_t k : *chosen) {
      IntVector e(n);
      e[k] = 1;
      seq.basis_divisors.push_back(std::move(e));
    }
  } else {
    // No ray subset works; keep the Smith basis, realised by columns of U^{-1}.
    seq.pi = pi_snf;
    IntMatrix u_inv = unimodular_inverse(snf.U);
    for (std::size_t k = 0; k < r; ++k) seq.basis_divisors.push_back(u_inv.col(m + k));
  }
  return seq;
}

IrrelevantIdeal irrelevant_ideal(std::size_t n, const std::vector<Cone>& max_cones) {
  IrrelevantIdeal ideal;
  for (const auto& cone : max_cones) {
    std::vector<int> support;
    for (std::size_t i = 0; i < n; ++i)
      if (!std::binary_search(cone.begin(), cone.end(), static_cast<int>(i))) support.push_back(static_cast<int>(i));
    ideal.generators.push_back(std::move(support));
  }
  return ideal;
}

IrrelevantIdeal irrelevant_ideal(const Fan& fan) { return irrelevant_ideal(fan.n(), fan.max_cones); }

std::vector<std::vector<int>> IrrelevantIdeal::minimal_primes() const {
  int n = 0;
  for (const auto& g : generators)
    for (int v : g) n = std::max(n, v + 1);
  if (n > 24) throw std::length_error("minimal_primes: too many variables");
  std::vector<std::uint32_t> gen_masks;
  for (const auto& g : generators) {
    std::uint32_t mask = 0;
    for (int v : g) mask |= 1u << v;
    gen_masks.push_back(mask);
  }
  // Minimal transversals of the generator supports, by increasing size.
  std::vector<std::uint32_t> found;
  for (int size = 0; size <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      bool hits = std::all_of(gen_masks.begin(), gen_masks.end(), [&](auto g) { return (g & mask) != 0; });
      if (!hits) continue;
      bool minimal = std::none_of(found.begin(), found.end(), [&](auto f) { return (f & mask) == f; });
      if (minimal) found.push_back(mask);
    }
  }
  std::vector<std::vector<int>> primes;
  for (auto mask : found) {
    std::vector<int> vars;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) vars.push_back(v);
    primes.push_back(std::move(vars));
  }
  return primes;
}

std::vector<Cone> chamber_cones(const Fan& fan, const std::vector<int>& removed) {
  if (removed.empty()) return fan.max_cones;
  std::vector<int> kept;
  for (std::size_t i = 0; i < fan.n(); ++i)
    if (std::find(removed.begin(), removed.end(), static_cast<int>(i)) == removed.end()) kept.push_back(static_cast<int>(i));
  for (int r : removed)
    if (r < 0 || static_cast<std::size_t>(r) >= fan.n()) throw FanError("removed_rays: index out of range");

  if (fan.m == 1) {
    int pos = -1, neg = -1;
    for (int r : kept) (fan.rays[static_cast<std::size_t>(r)][0] > 0 ? pos : neg) = r;
    if (kept.size() != 2 || pos < 0 || neg < 0) throw FanError("removed_rays: remaining rays are not complete");
    return {{pos}, {neg}};
  }
  if (fan.m != 2) throw FanError("removed_rays: chamber fans are only constructed for m <= 2");
  if (kept.size() < 3) throw FanError("removed_rays: remaining rays are not complete");

  auto half = [&](int r) {
    const auto& v = fan.rays[static_cast<std::size_t>(r)];
    return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
  };
  auto cross = [&](int a, int b) {
    const auto& u = fan.rays[static_cast<std::size_t>(a)];
    const auto& v = fan.rays[static_cast<std::size_t>(b)];
    return u[0] * v[1] - u[1] * v[0];
  };
  std::sort(kept.begin(), kept.end(), [&](int a, int b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    int a = kept[i], b = kept[(i + 1) % kept.size()];
    if (cross(a, b) <= 0) throw FanError("removed_rays: remaining rays leave a gap of angle >= pi");
    cones.push_back({std::min(a, b), std::max(a, b)});
  }
  return cones;
}

IrrelevantIdeal alternate_chamber_irrelevant(const Fan& fan, const std::vector<int>& removed) {
  return irrelevant_ideal(fan.n(), chamber_cones(fan, removed));
}

namespace {

std::string ideal_string(const std::vector<std::vector<int>>& gens, char var, const char* sep) {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out << ", ";
    for (std::size_t k = 0; k < gens[i].size(); ++k) out << (k ? sep : "") << var << gens[i][k] + 1;
  }
  out << ">";
  return out.str();
}

}  // namespace

std::string generators_string(const IrrelevantIdeal& ideal, char var) {
  return ideal_string(ideal.generators, var, "*");
}

std::string prime_decomposition_string(const IrrelevantIdeal& ideal, char var) {
  // Each prime is rendered <x1,x3>; single-variable primes as (x2).
  std::ostringstream out;
  auto primes = ideal.minimal_primes();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i) out << " \\cap ";
    if (primes[i].size() == 1) {
      out << "(" << var << primes[i][0] + 1 << ")";
      continue;
    }
    out << "<";
    for (std::size_t k = 0; k < primes[i].size(); ++k) out << (k ? "," : "") << var << primes[i][k] + 1;
    out << ">";
  }
  return out.str();
}

std::string product_decomposition_string(const IrrelevantIdeal& ideal) {
  return prime_decomposition_string(ideal, 'x') + " \\cap " + prime_decomposition_string(ideal, 'y');
}

}  // namespace diagres
