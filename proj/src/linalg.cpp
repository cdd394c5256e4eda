#include "diagres/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace diagres {

IntVector SnfResult::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// row_target += factor * row_source, on A and on the left transform U.
void add_row(IntMatrix& m, std::size_t target, std::size_t source, const Int& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) += factor * m(source, c);
}

void add_col(IntMatrix& m, std::size_t target, std::size_t source, const Int& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) += factor * m(r, source);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero |entry| in the trailing block; row-major scan keeps the lowest (row, col) on ties.
      bool found = false;
      std::size_t pr = t, pc = t;
      Int best;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          if (d(r, c) == 0) continue;
          Int mag = abs(d(r, c));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pr = r;
            pc = c;
          }
        }
      if (!found) return {d, u, v};

      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
      d.swap_cols(t, pc);
      v.swap_cols(t, pc);

      const Int pivot = d(t, t);
      bool dirty = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d(r, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), pivot.get_mpz_t());
        add_row(d, r, t, -q);
        add_row(u, r, t, -q);
        if (d(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d(t, c) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), pivot.get_mpz_t());
        add_col(d, c, t, -q);
        add_col(v, c, t, -q);
        if (d(t, c) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into the pivot row and repeat.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (!mpz_divisible_p(d(r, c).get_mpz_t(), pivot.get_mpz_t())) {
            add_row(d, t, r, Int(1));
            add_row(u, t, r, Int(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return {d, u, v};
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sgn_flip * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  RatMatrix m = a;
  Rat det = 1;
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    Rat inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rat f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RankKernel rank_and_kernel(const RatMatrix& a) {
  RatMatrix m = a;
  auto pivots = rref(m);
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m).size();
}

std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("unimodular_inverse: matrix not square");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = Rat(a(r, c));
    aug(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw std::invalid_argument("unimodular_inverse: singular matrix");
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Rat& v = aug(r, n + c);
      if (!is_integer(v)) throw std::invalid_argument("unimodular_inverse: determinant is not +-1");
      inv(r, c) = v.get_num();
    }
  return inv;
}

// ---------------------------------------------------------------------------

LinearConstraint less(RatVector coeffs, Rat rhs) { return {std::move(coeffs), Relation::Less, std::move(rhs)}; }
LinearConstraint less_equal(RatVector coeffs, Rat rhs) {
  return {std::move(coeffs), Relation::LessEqual, std::move(rhs)};
}
LinearConstraint greater(RatVector coeffs, Rat rhs) {
  for (auto& c : coeffs) c = -c;
  return {std::move(coeffs), Relation::Less, -rhs};
}
LinearConstraint greater_equal(RatVector coeffs, Rat rhs) {
  for (auto& c : coeffs) c = -c;
  return {std::move(coeffs), Relation::LessEqual, -rhs};
}
LinearConstraint equal(RatVector coeffs, Rat rhs) { return {std::move(coeffs), Relation::Equal, std::move(rhs)}; }

bool satisfies(const LinearConstraint& c, const RatVector& x) {
  Rat lhs = 0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) lhs += c.coeffs[i] * x[i];
  switch (c.rel) {
    case Relation::Less: return lhs < c.rhs;
    case Relation::LessEqual: return lhs <= c.rhs;
    case Relation::Equal: return lhs == c.rhs;
  }
  return false;
}

namespace {

// One-sided form: coeffs . x < rhs (strict) or <= rhs.
struct Halfspace {
  RatVector coeffs;
  Rat rhs;
  bool strict = false;
};

// Keeps, per normalized direction, only the tightest bound. Returns false on a violated constant row.
class HalfspaceSet {
 public:
  bool add(Halfspace h) {
    std::size_t lead = 0;
    while (lead < h.coeffs.size() && h.coeffs[lead] == 0) ++lead;
    if (lead == h.coeffs.size()) {
      bool ok = h.strict ? (0 < h.rhs) : (0 <= h.rhs);
      if (!ok) infeasible_ = true;
      return ok;
    }
    Rat scale = abs(h.coeffs[lead]);
    for (auto& c : h.coeffs) c /= scale;
    h.rhs /= scale;
    auto [it, inserted] = rows_.try_emplace(h.coeffs, h.rhs, h.strict);
    if (!inserted) {
      auto& [rhs, strict] = it->second;
      if (h.rhs < rhs || (h.rhs == rhs && h.strict && !strict)) {
        rhs = h.rhs;
        strict = h.strict;
      }
    }
    return true;
  }

  bool infeasible() const { return infeasible_; }

  std::vector<Halfspace> rows() const {
    std::vector<Halfspace> out;
    out.reserve(rows_.size());
    for (const auto& [coeffs, bound] : rows_) out.push_back({coeffs, bound.first, bound.second});
    return out;
  }

 private:
  std::map<RatVector, std::pair<Rat, bool>> rows_;
  bool infeasible_ = false;
};

}  // namespace

std::optional<RatVector> feasible_point(std::span<const LinearConstraint> constraints, std::size_t dim) {
  HalfspaceSet initial;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != dim) throw std::invalid_argument("feasible_point: constraint dimension mismatch");
    switch (c.rel) {
      case Relation::Less: initial.add({c.coeffs, c.rhs, true}); break;
      case Relation::LessEqual: initial.add({c.coeffs, c.rhs, false}); break;
      case Relation::Equal: {
        initial.add({c.coeffs, c.rhs, false});
        RatVector neg = c.coeffs;
        for (auto& v : neg) v = -v;
        initial.add({std::move(neg), -c.rhs, false});
        break;
      }
    }
  }
  if (initial.infeasible()) return std::nullopt;

  // levels[k] holds the system in variables 0..k-1 (the rest have zero coefficients).
  std::vector<std::vector<Halfspace>> levels(dim + 1);
  levels[dim] = initial.rows();
  for (std::size_t k = dim; k-- > 0;) {
    std::vector<const Halfspace*> lower, upper;
    HalfspaceSet next;
    for (const auto& h : levels[k + 1]) {
      int s = sign(h.coeffs[k]);
      if (s > 0) upper.push_back(&h);
      else if (s < 0) lower.push_back(&h);
      else next.add(h);
    }
    for (const auto* lo : lower)
      for (const auto* up : upper) {
        Rat wl = up->coeffs[k];
        Rat wu = -lo->coeffs[k];
        Halfspace combined;
        combined.coeffs.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) combined.coeffs[i] = wl * lo->coeffs[i] + wu * up->coeffs[i];
        combined.coeffs[k] = 0;
        combined.rhs = wl * lo->rhs + wu * up->rhs;
        combined.strict = lo->strict || up->strict;
        if (!next.add(std::move(combined))) return std::nullopt;
      }
    if (next.infeasible()) return std::nullopt;
    levels[k] = next.rows();
  }

  RatVector x(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::optional<Rat> lo, up;
    bool lo_strict = false, up_strict = false;
    for (const auto& h : levels[k + 1]) {
      int s = sign(h.coeffs[k]);
      if (s == 0) continue;
      Rat rest = h.rhs;
      for (std::size_t i = 0; i < k; ++i) rest -= h.coeffs[i] * x[i];
      Rat bound = rest / h.coeffs[k];
      if (s > 0) {
        if (!up || bound < *up) {
          up = bound;
          up_strict = h.strict;
        } else if (bound == *up) {
          up_strict = up_strict || h.strict;
        }
      } else {
        if (!lo || bound > *lo) {
          lo = bound;
          lo_strict = h.strict;
        } else if (bound == *lo) {
          lo_strict = lo_strict || h.strict;
        }
      }
    }
    if (lo && up) {
      if (*lo < *up) x[k] = (*lo + *up) / 2;
      else if (*lo == *up && !lo_strict && !up_strict) x[k] = *lo;
      else throw std::logic_error("feasible_point: back-substitution found an empty interval");
    } else if (lo) {
      x[k] = *lo + 1;
    } else if (up) {
      x[k] = *up - 1;
    } else {
      x[k] = 0;
    }
  }
  return x;
}

}  // namespace diagres
