#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "diagres/complex.hpp"
#include "diagres/fixtures.hpp"
#include "diagres/verify.hpp"
#include "support.hpp"

using namespace diagres;

namespace {

// The published complexes list line bundles O(-deg); these helpers take the published
// tuples and return the degrees of the generators.
ClDegree bundle(ExponentVector x, ExponentVector y) {
  for (auto& v : x) v = -v;
  for (auto& v : y) v = -v;
  return {x, y};
}

std::vector<ClDegree> degrees(const GradedFreeComplex& c, std::size_t d) {
  std::vector<ClDegree> out;
  for (const auto& g : c.generators[d]) out.push_back(g.degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClDegree> sorted(std::vector<ClDegree> v) {
  std::sort(v.begin(), v.end());
  return v;
}

MatchResult match_reference(const Fixture& f, const GradedFreeComplex& c) {
  std::vector<PolyMatrix> ours, ref;
  for (const auto& r : f.reference) {
    ours.push_back(to_poly_matrix(c.boundary(r.dim), c.n));
    ref.push_back(parse_poly_matrix(r.entries, c.n));
  }
  return match_signed_permutation(ours, ref);
}

// Reorders the generators of every dimension and flips the signs of those in dimension >= 1.
GradedFreeComplex scramble(const GradedFreeComplex& c, std::mt19937_64& rng) {
  GradedFreeComplex out = c;
  std::vector<std::vector<std::size_t>> where(c.generators.size());
  std::vector<std::vector<int>> flip(c.generators.size());
  for (std::size_t d = 0; d < c.generators.size(); ++d) {
    std::vector<std::size_t> perm(c.generators[d].size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    where[d].resize(perm.size());
    flip[d].resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      out.generators[d][perm[i]] = c.generators[d][i];
      where[d][i] = perm[i];
      flip[d][i] = (d > 0 && rng() % 2) ? -1 : 1;
    }
  }
  for (std::size_t d = 1; d < c.generators.size(); ++d)
    for (auto& t : out.boundary(d).terms) {
      t.sign *= flip[d - 1][t.row] * flip[d][t.col];
      t.row = where[d - 1][t.row];
      t.col = where[d][t.col];
    }
  return out;
}

}  // namespace

TEST_CASE("blow-up of the plane: degrees and matrices") {
  auto f = blowup_plane();
  auto p = support::run(f);
  const auto& c = p.complex;
  CHECK(c.ranks() == std::vector<std::size_t>{1, 3, 2});
  CHECK(degrees(c, 0) == sorted({bundle({0, 0}, {0, 0})}));
  CHECK(degrees(c, 1) == sorted({bundle({0, -1}, {0, -1}), bundle({-1, -1}, {-1, -1}), bundle({-1, -1}, {-1, -1})}));
  CHECK(degrees(c, 2) == sorted({bundle({-1, -1}, {-1, -2}), bundle({-1, -2}, {-1, -1})}));

  auto m = match_reference(f, c);
  CHECK(m.matched);
  CHECK(m.shared_ordering);
}

TEST_CASE("deformed blow-up: first boundary map") {
  auto f = blowup_plane_deformed();
  auto p = support::run(f);
  CHECK(p.complex.ranks() == std::vector<std::size_t>{5, 10, 5});
  auto m = match_reference(f, p.complex);
  CHECK(m.matched);
  CHECK(m.shared_ordering);
}

TEST_CASE("twice blown-up plane: degrees and matrices") {
  auto f = twice_blowup();
  auto p = support::run(f);
  const auto& c = p.complex;
  CHECK(c.ranks() == std::vector<std::size_t>{2, 6, 4});
  CHECK(degrees(c, 0) == sorted({bundle({0, 0, 0}, {0, 0, 0}), bundle({1, 1, 1}, {-1, -1, -1})}));
  CHECK(degrees(c, 1) == sorted({bundle({-1, -1, 0}, {-1, -1, 0}), bundle({-1, -1, 0}, {-2, -2, -1}),
                                 bundle({0, -1, 0}, {-1, -2, -1}), bundle({-1, -2, -1}, {-1, -2, -1}),
                                 bundle({0, 0, 0}, {-1, -1, -1}), bundle({0, 0, 0}, {-1, -1, -1})}));
  CHECK(degrees(c, 2) == sorted({bundle({-1, -1, 0}, {-2, -3, -1}), bundle({-1, -2, -1}, {-2, -2, -1}),
                                 bundle({-1, -1, 0}, {-1, -1, -1}), bundle({-1, -2, -1}, {-1, -2, -1})}));

  // Each published map matches on its own. The two printed maps do not compose to zero, so
  // no single ordering can match both at once.
  auto m = match_reference(f, c);
  CHECK(m.matched);
  CHECK_FALSE(m.shared_ordering);

  auto ref1 = parse_poly_matrix(f.reference[0].dim == 1 ? f.reference[0].entries : f.reference[1].entries, 5);
  auto ref2 = parse_poly_matrix(f.reference[0].dim == 2 ? f.reference[0].entries : f.reference[1].entries, 5);
  bool zero = true;
  for (std::size_t i = 0; i < ref1.size(); ++i)
    for (std::size_t j = 0; j < ref2[0].size(); ++j) {
      Polynomial s(5);
      for (std::size_t k = 0; k < ref2.size(); ++k) s += ref1[i][k] * ref2[k][j];
      zero = zero && s.is_zero();
    }
  CHECK_FALSE(zero);
}

TEST_CASE("signed permutation matching rejects altered matrices") {
  auto f = blowup_plane();
  auto c = support::run(f).complex;
  std::vector<PolyMatrix> ref;
  for (const auto& r : f.reference) ref.push_back(parse_poly_matrix(r.entries, 4));
  std::vector<PolyMatrix> ours;
  for (const auto& r : f.reference) ours.push_back(to_poly_matrix(c.boundary(r.dim), 4));

  auto changed = ref;
  changed.back()[0][0] = parse_polynomial("x2*y3", 4);
  CHECK_FALSE(match_signed_permutation(ours, changed).matched);

  // negating a column of d1 without the matching row of d2 breaks the common ordering
  auto flipped = ref;
  for (auto& row : flipped.front())
    if (!row[0].is_zero()) {
      row[0] = -row[0];
      break;
    }
  CHECK_FALSE(match_signed_permutation(ours, flipped).shared_ordering);
}

TEST_CASE("Lawrence binomials of the blow-up at eps = 0") {
  auto p = support::run(blowup_plane_undeformed());
  auto bins = jl_binomials(p.complex);
  std::vector<Polynomial> expected = {parse_polynomial("x1*x2*y4 - x4*y1*y2", 4), parse_polynomial("x2*x3*y4 - x4*y2*y3", 4),
                                      parse_polynomial("x1*y3 - x3*y1", 4)};
  REQUIRE(bins.size() == expected.size());
  for (const auto& e : expected) {
    auto hit = std::count_if(bins.begin(), bins.end(), [&](const Binomial& b) {
      return b.polynomial() == e || b.polynomial() == -e;
    });
    CHECK(hit == 1);
  }
  // each binomial is x^a y^b - x^b y^a with a - b in L
  for (const auto& b : bins) {
    IntVector d;
    for (auto v : b.difference()) d.push_back(Int(static_cast<long>(v)));
    CHECK(p.seq.in_lattice(d));
  }
}

TEST_CASE("canonical form ignores generator order and signs") {
  std::mt19937_64 rng(4);
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name);
    auto seq = f.basis ? fundamental_sequence(f.fan, f.basis) : fundamental_sequence(f.fan);
    auto raw = build_complex(enumerate_cells(seq, f.deformation()), seq);
    auto canon = canonicalize(raw);
    CHECK(canonicalize(canon) == canon);
    for (int trial = 0; trial < 5; ++trial) {
      auto s = scramble(raw, rng);
      CHECK(check_d_squared(s));
      CHECK(canonicalize(s) == canon);
    }
  }
}

TEST_CASE("complex JSON round trip") {
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name);
    auto c = support::run(f).complex;
    auto j = complex_to_json(c);
    CHECK(complex_from_json(j) == c);
    CHECK(complex_from_json(nlohmann::json::parse(j.dump())) == c);
    CHECK(j["ranks"].get<std::vector<std::size_t>>() == c.ranks());
  }

  auto j = complex_to_json(support::run(blowup_plane()).complex);
  auto bad = j;
  bad["ranks"][1] = 4;
  CHECK_THROWS(complex_from_json(bad));
  bad = j;
  bad["boundaries"][0]["entries"][0]["monomial"]["x"]["9"] = 1;
  CHECK_THROWS(complex_from_json(bad));
}
