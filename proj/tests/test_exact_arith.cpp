#include <doctest.h>

#include <algorithm>
#include <random>

#include "diagres/linalg.hpp"
#include "diagres/rational.hpp"

using namespace diagres;

namespace {

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  IntMatrix a(r, c);
  std::uniform_int_distribution<int> d(-range, range);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

// Cofactor expansion. Slow and obviously correct, which is the point.
Rat laplace_det(const RatMatrix& a) {
  std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rat total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = a(i, j);
    Rat term = a(0, c) * laplace_det(minor);
    total += (c % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

// Largest k with a nonzero k x k minor.
std::size_t minor_rank(const RatMatrix& a) {
  std::size_t best = 0;
  std::size_t r = a.rows(), c = a.cols();
  for (std::size_t rmask = 1; rmask < (1u << r); ++rmask)
    for (std::size_t cmask = 1; cmask < (1u << c); ++cmask) {
      std::size_t k = static_cast<std::size_t>(__builtin_popcount(rmask));
      if (k != static_cast<std::size_t>(__builtin_popcount(cmask)) || k <= best) continue;
      RatMatrix sub(k, k);
      std::size_t ii = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (!(rmask >> i & 1)) continue;
        std::size_t jj = 0;
        for (std::size_t j = 0; j < c; ++j)
          if (cmask >> j & 1) sub(ii, jj++) = a(i, j);
        ++ii;
      }
      if (laplace_det(sub) != 0) best = k;
    }
  return best;
}

}  // namespace

TEST_CASE("rational parsing and rounding") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat(" -1/10 ") == Rat(-1, 10));
  CHECK(parse_rat("1/-2") == Rat(-1, 2));
  CHECK(parse_rat("-0.25") == Rat(-1, 4));
  CHECK(parse_rat(".5") == Rat(1, 2));
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS(parse_rat("1/0"), std::domain_error);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.-5"), std::invalid_argument);

  CHECK(floor(Rat(-1, 2)) == -1);
  CHECK(ceil(Rat(-1, 2)) == 0);
  CHECK(floor(Rat(7, 3)) == 2);
  CHECK(floor(Rat(-3)) == -3);
  CHECK(is_integer(make_rat(4, 2)));
  CHECK(to_string(make_rat(-6, 4)) == "-3/2");
  CHECK(to_string(make_rat(3, -6)) == "-1/2");
  CHECK(to_int64(Int(-5)) == -5);
  CHECK_THROWS_AS(to_int64(Int("100000000000000000000000")), std::overflow_error);
}

TEST_CASE("Smith normal form on random integer matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_int_matrix(rng, r, c, trial % 2 == 0 ? 3 : 9);
    auto snf = smith_normal_form(a);
    REQUIRE(snf.U * a * snf.V == snf.D);
    CHECK(abs(laplace_det(to_rat(snf.U))) == 1);
    CHECK(abs(laplace_det(to_rat(snf.V))) == 1);

    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(snf.D(i, j) == 0);
    auto diag = snf.diagonal();
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < diag.size(); ++k) {
      CHECK(diag[k] >= 0);
      if (diag[k] != 0) ++nonzero;
      if (k + 1 < diag.size() && diag[k] != 0) CHECK(diag[k + 1] % diag[k] == 0);
      if (k + 1 < diag.size() && diag[k] == 0) CHECK(diag[k + 1] == 0);
    }
    CHECK(nonzero == minor_rank(to_rat(a)));
  }
}

TEST_CASE("determinants agree with cofactor expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix a = random_int_matrix(rng, n, n, 4);
    CHECK(Rat(determinant(a)) == laplace_det(to_rat(a)));
    CHECK(determinant(to_rat(a)) == laplace_det(to_rat(a)));
  }
}

TEST_CASE("rank, kernel and linear solves") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    // low-rank products show up often enough to exercise the degenerate paths
    IntMatrix a = (trial % 3 == 0) ? random_int_matrix(rng, r, 1, 3) * random_int_matrix(rng, 1, c, 3)
                                   : random_int_matrix(rng, r, c, 2);
    RatMatrix q = to_rat(a);
    auto rk = rank_and_kernel(q);
    CHECK(rk.rank == minor_rank(q));
    CHECK(rk.kernel.size() == c - rk.rank);
    for (const auto& v : rk.kernel)
      for (const auto& x : q.apply(v)) CHECK(x == 0);

    RatVector x0(c);
    for (auto& x : x0) x = make_rat(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    auto b = q.apply(x0);
    auto sol = solve_linear(q, b);
    REQUIRE(sol);
    CHECK(q.apply(*sol) == b);
  }

  RatMatrix dup{{1, 1}, {2, 2}};
  CHECK_FALSE(solve_linear(dup, {Rat(1), Rat(3)}));
  CHECK(rank_and_kernel(RatMatrix(0, 3)).kernel.size() == 3);
}

TEST_CASE("unimodular inverse") {
  IntMatrix a{{2, 1}, {1, 1}};
  CHECK(unimodular_inverse(a) * a == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("Fourier-Motzkin feasibility") {
  SUBCASE("hand-made systems") {
    std::vector<LinearConstraint> open_triangle = {greater({1, 0}, 0), greater({0, 1}, 0), less({1, 1}, 1)};
    auto x = feasible_point(open_triangle, 2);
    REQUIRE(x);
    for (const auto& c : open_triangle) CHECK(satisfies(c, *x));

    std::vector<LinearConstraint> touching = {less_equal({1, 0}, 0), greater_equal({1, 0}, 0), equal({1, 1}, 2)};
    x = feasible_point(touching, 2);
    REQUIRE(x);
    CHECK((*x)[0] == 0);
    CHECK((*x)[1] == 2);

    std::vector<LinearConstraint> empty_open = {less({1, 0}, 0), greater({1, 0}, 0)};
    CHECK_FALSE(feasible_point(empty_open, 2));
    std::vector<LinearConstraint> strict_point = {less_equal({1, -1}, 0), greater({1, -1}, 0)};
    CHECK_FALSE(feasible_point(strict_point, 2));
    std::vector<LinearConstraint> bad = {equal({0, 0}, 1)};
    CHECK_FALSE(feasible_point(bad, 2));
  }

  SUBCASE("random systems against a grid search") {
    // The grid only proves feasibility, so it is a one-sided oracle; the other side is that
    // any returned point must satisfy every constraint exactly.
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> coef(-3, 3);
    int grid_hits = 0, infeasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<LinearConstraint> cs;
      std::size_t count = 2 + rng() % 4;
      for (std::size_t k = 0; k < count; ++k) {
        RatVector a{Rat(coef(rng)), Rat(coef(rng))};
        Rat b(coef(rng));
        switch (rng() % 4) {
          case 0: cs.push_back(less(a, b)); break;
          case 1: cs.push_back(less_equal(a, b)); break;
          case 2: cs.push_back(greater(a, b)); break;
          default: cs.push_back(trial % 7 == 0 ? equal(a, b) : greater_equal(a, b));
        }
      }
      auto x = feasible_point(cs, 2);
      if (x)
        for (const auto& c : cs) CHECK(satisfies(c, *x));

      bool grid_feasible = false;
      for (int i = -48; i <= 48 && !grid_feasible; ++i)
        for (int j = -48; j <= 48 && !grid_feasible; ++j) {
          RatVector p{make_rat(i, 12), make_rat(j, 12)};
          grid_feasible = std::all_of(cs.begin(), cs.end(), [&](const LinearConstraint& c) { return satisfies(c, p); });
        }
      if (grid_feasible) {
        ++grid_hits;
        CHECK(x.has_value());
      }
      if (!x) ++infeasible;
    }
    CHECK(grid_hits > 50);
    CHECK(infeasible > 20);
  }
}
