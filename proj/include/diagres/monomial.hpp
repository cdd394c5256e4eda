#pragma once

// Laurent monomials in x_1..x_n, y_1..y_n, their Cl(X x X)-degrees, and the floor labeling.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diagres/fan.hpp"
#include "diagres/rational.hpp"

namespace diagres {

using ExponentVector = std::vector<std::int64_t>;

struct LaurentMonomial {
  ExponentVector x;
  ExponentVector y;

  static LaurentMonomial one(std::size_t n) { return {ExponentVector(n, 0), ExponentVector(n, 0)}; }

  std::size_t n() const { return x.size(); }
  bool is_polynomial() const;  // no negative exponents
  bool is_one() const;

  friend LaurentMonomial operator*(const LaurentMonomial& a, const LaurentMonomial& b);
  friend LaurentMonomial operator/(const LaurentMonomial& a, const LaurentMonomial& b);
  friend auto operator<=>(const LaurentMonomial&, const LaurentMonomial&) = default;
  friend bool operator==(const LaurentMonomial&, const LaurentMonomial&) = default;
};

/// Componentwise a <= b in all 2n exponents, i.e. a divides b.
bool divides(const LaurentMonomial& a, const LaurentMonomial& b);
/// Componentwise max (Laurent lcm).
LaurentMonomial lcm(const LaurentMonomial& a, const LaurentMonomial& b);
LaurentMonomial gcd(const LaurentMonomial& a, const LaurentMonomial& b);

/// "x1*x2*y4/(x4*y1*y2)"; "1" for the unit.
std::string to_string(const LaurentMonomial& mon);
/// Inverse of to_string; also accepts powers such as "x2^2".
LaurentMonomial parse_monomial(std::string_view text, std::size_t n);

struct ClDegree {
  ExponentVector x;
  ExponentVector y;

  friend auto operator<=>(const ClDegree&, const ClDegree&) = default;
  friend bool operator==(const ClDegree&, const ClDegree&) = default;
};

ClDegree operator+(const ClDegree& a, const ClDegree& b);
std::string to_string(const ClDegree& deg);

/// Label of the vertex with ambient coordinates p: x^{floor p} / y^{floor p}.
LaurentMonomial vertex_label(const RatVector& p);

/// Laurent lcm of a nonempty set of vertex labels.
LaurentMonomial face_label(const std::vector<LaurentMonomial>& vertex_labels);

ClDegree degree_of(const LaurentMonomial& mon, const ExactSeq& seq);

/// Label moved by v in L: x-exponents += v, y-exponents -= v. Throws std::invalid_argument if v is not in L.
LaurentMonomial translate_label(const LaurentMonomial& mon, const ExponentVector& v, const ExactSeq& seq);
/// Same without the lattice membership check (v is known to be B*w).
LaurentMonomial translate_label_unchecked(const LaurentMonomial& mon, const ExponentVector& v);

/// Integer polynomial in the x, y variables.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t n) : n_(n) {}
  Polynomial(std::size_t n, const LaurentMonomial& mon, std::int64_t coeff = 1);

  std::size_t n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<LaurentMonomial, std::int64_t>& terms() const { return terms_; }

  void add_term(const LaurentMonomial& mon, std::int64_t coeff);
  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t n_ = 0;
  std::map<LaurentMonomial, std::int64_t> terms_;
};

/// "x3*y1 - x1*y3"; "0" for the zero polynomial.
std::string to_string(const Polynomial& p);
/// Parses sums of signed monomials such as "x4*y1*y2 - x1*x2*y4", "-1", "0".
Polynomial parse_polynomial(std::string_view text, std::size_t n);

}  // namespace diagres
