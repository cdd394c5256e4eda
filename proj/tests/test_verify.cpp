#include <doctest.h>

#include <random>

#include "diagres/complex.hpp"
#include "diagres/fixtures.hpp"
#include "diagres/verify.hpp"
#include "support.hpp"

using namespace diagres;

namespace {

ExponentVector ev(std::initializer_list<std::int64_t> v) { return ExponentVector(v); }

IntVector as_int(const ExponentVector& v) {
  IntVector out;
  for (auto x : v) out.push_back(Int(static_cast<long>(x)));
  return out;
}

// q * m_p = x^alpha y^beta m_u for the multiplier q = x^a y^b, m_p = x^f / y^f, m_u = x^u / y^u
struct Identity {
  ExponentVector alpha, beta;
};
Identity solve_identity(const ExponentVector& a, const ExponentVector& b, const ExponentVector& f, const ExponentVector& u) {
  Identity id;
  for (std::size_t i = 0; i < f.size(); ++i) {
    id.alpha.push_back(a[i] + f[i] - u[i]);
    id.beta.push_back(b[i] - f[i] + u[i]);
  }
  return id;
}

bool nonnegative(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; });
}

// Written-out multiplications from the worked examples, each as (a, b, f, u, alpha, beta).
struct Published {
  const char* what;
  ExponentVector a, b, f, u, alpha, beta;
};

}  // namespace

TEST_CASE("torsion witnesses for y2/x2 in the nef chamber") {
  auto f = blowup_plane_deformed();
  auto seq = fundamental_sequence(f.fan);
  std::vector<Published> cases = {
      // x2 (y2/x2) = y2
      {"x2", ev({0, 1, 0, 0}), ev({0, 0, 0, 0}), ev({0, -1, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0}), ev({0, 1, 0, 0})},
      // y3 x4 (y2/x2) = (x4 y2 y3 / (x2 x3 y4)) x3 y4
      {"x4*y3", ev({0, 0, 0, 1}), ev({0, 0, 1, 0}), ev({0, -1, 0, 0}), ev({0, -1, -1, 1}), ev({0, 0, 1, 0}),
       ev({0, 0, 0, 1})},
  };
  for (const auto& c : cases) {
    CAPTURE(c.what);
    CHECK(seq.in_lattice(as_int(c.u)));
    auto id = solve_identity(c.a, c.b, c.f, c.u);
    CHECK(id.alpha == c.alpha);
    CHECK(id.beta == c.beta);
    auto w = lattice_witness(seq, c.f, c.a, c.b);
    REQUIRE(w);
    CHECK(seq.in_lattice(as_int(w->u)));
    CHECK(nonnegative(w->alpha));
    CHECK(nonnegative(w->beta));
    CHECK(solve_identity(c.a, c.b, c.f, w->u).alpha == w->alpha);
  }
  // without a multiplier there is nothing to do: y2/x2 itself is not in the lattice module
  CHECK_FALSE(lattice_witness(seq, ev({0, -1, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0})));
}

TEST_CASE("torsion witnesses for y1/x1 and y3/x3 in the other chamber") {
  auto f = blowup_plane_other_chamber();
  auto seq = fundamental_sequence(f.fan);
  std::vector<Published> cases = {
      {"x1 * y1/x1", ev({1, 0, 0, 0}), ev({0, 0, 0, 0}), ev({-1, 0, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0}),
       ev({1, 0, 0, 0})},
      {"x3 * y1/x1", ev({0, 0, 1, 0}), ev({0, 0, 0, 0}), ev({-1, 0, 0, 0}), ev({-1, 0, 1, 0}), ev({0, 0, 0, 0}),
       ev({0, 0, 1, 0})},
      {"x4 y2 * y1/x1", ev({0, 0, 0, 1}), ev({0, 1, 0, 0}), ev({-1, 0, 0, 0}), ev({-1, -1, 0, 1}), ev({0, 1, 0, 0}),
       ev({0, 0, 0, 1})},
      {"x1 * y3/x3", ev({1, 0, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, -1, 0}), ev({1, 0, -1, 0}), ev({0, 0, 0, 0}),
       ev({1, 0, 0, 0})},
      {"x3 * y3/x3", ev({0, 0, 1, 0}), ev({0, 0, 0, 0}), ev({0, 0, -1, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0}),
       ev({0, 0, 1, 0})},
      {"x4 y2 * y3/x3", ev({0, 0, 0, 1}), ev({0, 1, 0, 0}), ev({0, 0, -1, 0}), ev({0, -1, -1, 1}), ev({0, 1, 0, 0}),
       ev({0, 0, 0, 1})},
  };
  for (const auto& c : cases) {
    CAPTURE(c.what);
    CHECK(seq.in_lattice(as_int(c.u)));
    auto id = solve_identity(c.a, c.b, c.f, c.u);
    CHECK(id.alpha == c.alpha);
    CHECK(id.beta == c.beta);
    auto w = lattice_witness(seq, c.f, c.a, c.b);
    REQUIRE(w);
    CHECK(nonnegative(w->alpha));
    CHECK(nonnegative(w->beta));
  }

  // the vertices of the deformed complex carry exactly the classes 1 and y1/x1 (= y3/x3 mod L)
  auto qc = enumerate_cells(seq, f.deformation());
  auto labels = cell_labels(qc);
  bool saw_extra = false;
  for (const auto& l : labels[0]) {
    auto rest = l / parse_monomial("y1/x1", 4);
    bool is_lattice = true, is_extra = true;
    IntVector ul, ue;
    for (std::size_t i = 0; i < 4; ++i) {
      is_lattice = is_lattice && l.x[i] == -l.y[i];
      is_extra = is_extra && rest.x[i] == -rest.y[i];
      ul.push_back(Int(static_cast<long>(l.x[i])));
      ue.push_back(Int(static_cast<long>(rest.x[i])));
    }
    is_lattice = is_lattice && seq.in_lattice(ul);
    is_extra = is_extra && seq.in_lattice(ue);
    CHECK((is_lattice || is_extra));
    saw_extra = saw_extra || is_extra;
  }
  CHECK(saw_extra);

  auto report = full_cokernel_check(qc, seq, chamber_cones(f.fan, f.removed_rays));
  CHECK(report.passed);
  CHECK(report.certificates.size() == qc.cells[0].size() * 9);
}

TEST_CASE("torsion certificates") {
  auto f = twice_blowup();
  auto seq = fundamental_sequence(f.fan, f.basis);
  const auto& cones = f.fan.max_cones;

  SUBCASE("a lattice point needs no multiplier") {
    for (const auto& s1 : cones)
      for (const auto& s2 : cones) {
        auto cert = torsion_certificate(seq, lattice_vector(seq.B, {2, -1}), s1, s2);
        CHECK(cert.k == 0);
        CHECK(verify_certificate(seq, cert));
      }
  }

  SUBCASE("the extra vertex") {
    ExponentVector extra = ev({0, 1, 0, 0, -1});
    for (const auto& s1 : cones)
      for (const auto& s2 : cones) {
        auto cert = torsion_certificate(seq, extra, s1, s2);
        CHECK(verify_certificate(seq, cert));
        CHECK(cert.k >= 1);
        auto broken = cert;
        broken.alpha[0] += 1;
        CHECK_FALSE(verify_certificate(seq, broken));
        broken = cert;
        broken.u[1] += 1;
        CHECK_FALSE(verify_certificate(seq, broken));
      }
  }

  SUBCASE("non-smooth cones are refused") {
    CHECK_THROWS_AS(torsion_certificate(seq, ev({0, 1, 0, 0, 0}), Cone{1, 3}, Cone{0, 1}), CertificateError);
  }

  auto qc = enumerate_cells(seq, f.deformation());
  auto report = full_cokernel_check(qc, seq, cones);
  CHECK(report.passed);
  CHECK(report.certificates.size() == 2 * 25);
}

TEST_CASE("acyclicity of degree truncations") {
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name);
    auto p = support::run(f);
    auto labels = cell_labels(p.qc);
    for (const auto& b : sample_degrees(p.qc, labels, 20, 7)) {
      auto r = subcomplex_acyclicity(p.qc, labels, b);
      CAPTURE(to_string(b));
      if (!r.empty) CHECK(r.acyclic());
    }
    // a degree below every label leaves nothing, which is reported rather than counted as acyclic
    LaurentMonomial tiny = LaurentMonomial::one(f.fan.n());
    for (auto& e : tiny.x) e = -50;
    for (auto& e : tiny.y) e = -50;
    auto r = subcomplex_acyclicity(p.qc, labels, tiny);
    CHECK(r.empty);
    CHECK_FALSE(r.acyclic());
  }
}

TEST_CASE("the quotient complex is a torus") {
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name);
    auto p = support::run(f);
    auto betti = quotient_betti_numbers(p.qc);
    if (f.fan.m == 1) CHECK(betti == std::vector<std::size_t>{1, 1});
    else CHECK(betti == std::vector<std::size_t>{1, 2, 1});
  }
}

TEST_CASE("unimodularity matches integral vertices") {
  for (const auto& f : {blowup_plane(), blowup_plane_undeformed(), twice_blowup(), projective_line()}) {
    CAPTURE(f.name);
    auto p = support::run(f);
    CHECK(unimodularity_cross_check(p.qc, validate_fan(f.fan)));
  }
  // lying about the classification is caught
  auto p = support::run(twice_blowup());
  FanClassification wrong = validate_fan(twice_blowup().fan);
  wrong.unimodular = true;
  CHECK_FALSE(unimodularity_cross_check(p.qc, wrong));
}

TEST_CASE("every single-term mutation is detected") {
  for (const auto& f : worked_examples()) {
    CAPTURE(f.name);
    auto p = support::run(f);
    REQUIRE(check_d_squared(p.complex));
    REQUIRE(check_homogeneity(p.complex, p.seq));
    std::size_t mutations = 0;
    for (std::size_t d = 1; d <= p.complex.top(); ++d) {
      for (std::size_t t = 0; t < p.complex.boundary(d).terms.size(); ++t) {
        auto sign = p.complex;
        sign.boundary(d).terms[t].sign *= -1;
        CHECK_FALSE((check_d_squared(sign) && check_homogeneity(sign, p.seq)));
        ++mutations;
        for (std::size_t i = 0; i < p.complex.n; ++i) {
          for (int side = 0; side < 2; ++side) {
            auto bump = p.complex;
            auto& mon = bump.boundary(d).terms[t].monomial;
            (side == 0 ? mon.x : mon.y)[i] += 1;
            CHECK_FALSE((check_d_squared(bump) && check_homogeneity(bump, p.seq)));
            ++mutations;
          }
        }
      }
    }
    CHECK(mutations >= 20);
  }
}

TEST_CASE("battery on the fixtures and on random surfaces") {
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name);
    auto p = support::run(f);
    BatteryOptions opt;
    opt.unimodularity = p.undeformed;
    opt.random_degrees = 10;
    auto report = run_battery(f.fan, p.seq, p.qc, p.complex, p.cones, opt);
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    auto j = report.to_json();
    CHECK(j["passed"].get<bool>());
    CHECK(j["certificates"].size() == report.cokernel.certificates.size());
  }

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    auto fan = support::random_surface_fan(rng);
    auto p = support::run(fan, Deformation::zero(fan.n()));
    BatteryOptions opt;
    opt.random_degrees = 10;
    auto report = run_battery(fan, p.seq, p.qc, p.complex, p.cones, opt);
    CHECK(report.passed());
  }
}

namespace {

Fan cyclic_surface_fan(std::vector<std::vector<std::int64_t>> rays) {
  Fan fan;
  fan.m = 2;
  fan.rays = std::move(rays);
  const int n = static_cast<int>(fan.rays.size());
  for (int i = 0; i + 1 < n; ++i) fan.max_cones.push_back(Cone{i, i + 1});
  fan.max_cones.push_back(Cone{0, n - 1});
  return fan;
}

LaurentMonomial degree(ExponentVector x, ExponentVector y) {
  LaurentMonomial b = LaurentMonomial::one(x.size());
  b.x = std::move(x);
  b.y = std::move(y);
  return b;
}

}  // namespace

// Floor labels do not make every truncation acyclic. Both cases were cross-checked by
// enumerating the line arrangement directly in the z-plane.
TEST_CASE("disconnected truncations of smooth non-unimodular and deformed complexes") {
  SUBCASE("eps = 0, non-unimodular") {
    auto fan = cyclic_surface_fan({{1, 1}, {2, 1}, {3, 1}, {4, 1}, {1, 0}, {-2, -1}});
    auto fc = validate_fan(fan);
    REQUIRE(fc.smooth);
    REQUIRE_FALSE(fc.unimodular);
    auto p = support::run(fan, Deformation::zero(6));
    auto labels = cell_labels(p.qc);
    auto r = subcomplex_acyclicity(p.qc, labels, degree({3, 4, 2, 4, 2, -2}, {1, 0, 0, 0, 2, 3}));
    CHECK(r.cells_per_dim == std::vector<std::size_t>{16, 23, 9});
    CHECK(r.reduced_homology == std::vector<std::size_t>{0, 1, 0, 0});
    // the remaining checks of the battery still hold for this fan
    BatteryOptions opt;
    opt.random_degrees = 0;
    auto report = run_battery(fan, p.seq, p.qc, p.complex, p.cones, opt);
    for (const auto& c : report.checks)
      if (c.name != "acyclicity") CHECK(c.passed);
  }

  SUBCASE("ample deformation of a unimodular fan") {
    auto fan = cyclic_surface_fan({{1, 1}, {2, 3}, {1, 2}, {-1, -1}, {-2, -3}, {-1, -2}});
    REQUIRE(validate_fan(fan).unimodular);
    Deformation eps{{make_rat(19, 1000), make_rat(97, 2000), make_rat(37, 400), make_rat(51, 400), make_rat(53, 500),
                     make_rat(117, 2000)}};
    auto p = support::run(fan, eps);
    REQUIRE(transversality_report(p.qc).transversal);
    auto labels = cell_labels(p.qc);
    auto r = subcomplex_acyclicity(p.qc, labels, degree({1, 3, 1, -1, -2, -2}, {-1, -2, -1, 1, 3, 2}));
    CHECK(r.cells_per_dim == std::vector<std::size_t>{2, 0, 0});
    CHECK_FALSE(r.acyclic());
  }
}

TEST_CASE("truncations are acyclic for unimodular fans at eps = 0") {
  std::mt19937_64 rng(404);
  int tried = 0;
  while (tried < 15) {
    auto fan = support::random_surface_fan(rng);
    if (!validate_fan(fan).unimodular) continue;
    ++tried;
    auto p = support::run(fan, Deformation::zero(fan.n()));
    auto labels = cell_labels(p.qc);
    for (const auto& b : sample_degrees(p.qc, labels, 30, static_cast<std::uint64_t>(tried))) {
      auto r = subcomplex_acyclicity(p.qc, labels, b);
      CAPTURE(to_string(b));
      if (!r.empty) CHECK(r.acyclic());
    }
  }
}
