#include "diagres/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace diagres {

bool LaurentMonomial::is_polynomial() const {
  auto nonneg = [](std::int64_t e) { return e >= 0; };
  return std::all_of(x.begin(), x.end(), nonneg) && std::all_of(y.begin(), y.end(), nonneg);
}

bool LaurentMonomial::is_one() const {
  auto zero = [](std::int64_t e) { return e == 0; };
  return std::all_of(x.begin(), x.end(), zero) && std::all_of(y.begin(), y.end(), zero);
}

namespace {

template <class Op>
LaurentMonomial combine(const LaurentMonomial& a, const LaurentMonomial& b, Op op) {
  if (a.n() != b.n()) throw std::invalid_argument("monomial: variable count mismatch");
  LaurentMonomial out = a;
  for (std::size_t i = 0; i < a.n(); ++i) {
    out.x[i] = op(a.x[i], b.x[i]);
    out.y[i] = op(a.y[i], b.y[i]);
  }
  return out;
}

}  // namespace

LaurentMonomial operator*(const LaurentMonomial& a, const LaurentMonomial& b) {
  return combine(a, b, [](auto u, auto v) { return u + v; });
}
LaurentMonomial operator/(const LaurentMonomial& a, const LaurentMonomial& b) {
  return combine(a, b, [](auto u, auto v) { return u - v; });
}

bool divides(const LaurentMonomial& a, const LaurentMonomial& b) {
  for (std::size_t i = 0; i < a.n(); ++i)
    if (a.x[i] > b.x[i] || a.y[i] > b.y[i]) return false;
  return true;
}

LaurentMonomial lcm(const LaurentMonomial& a, const LaurentMonomial& b) {
  return combine(a, b, [](auto u, auto v) { return std::max(u, v); });
}
LaurentMonomial gcd(const LaurentMonomial& a, const LaurentMonomial& b) {
  return combine(a, b, [](auto u, auto v) { return std::min(u, v); });
}

namespace {

void append_factor(std::ostringstream& out, bool& first, char var, std::size_t i, std::int64_t e) {
  if (!first) out << "*";
  first = false;
  out << var << i + 1;
  if (e != 1) out << "^" << e;
}

}  // namespace

std::string to_string(const LaurentMonomial& mon) {
  std::ostringstream num, den;
  bool num_first = true, den_first = true;
  std::size_t den_count = 0;
  for (char var : {'x', 'y'}) {
    const auto& e = var == 'x' ? mon.x : mon.y;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) append_factor(num, num_first, var, i, e[i]);
      if (e[i] < 0) {
        append_factor(den, den_first, var, i, -e[i]);
        den_count += static_cast<std::size_t>(-e[i]);
      }
    }
  }
  std::string top = num_first ? "1" : num.str();
  if (den_first) return top;
  std::string bottom = den.str();
  if (den_count > 1) bottom = "(" + bottom + ")";
  return top + "/" + bottom;
}

namespace {

class MonomialParser {
 public:
  MonomialParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  // product := factor ('*' factor)* ; factor := '1' | ('x'|'y') digits ('^' digits)?
  void product(LaurentMonomial& mon, int sign) {
    factor(mon, sign);
    while (peek() == '*') {
      ++pos_;
      factor(mon, sign);
    }
  }

  void monomial(LaurentMonomial& mon) {
    product(mon, +1);
    if (peek() == '/') {
      ++pos_;
      if (peek() == '(') {
        ++pos_;
        product(mon, -1);
        expect(')');
      } else {
        factor(mon, -1);
      }
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool done() { return peek() == '\0'; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("monomial parse error (" + what + ") in \"" + std::string(text_) + "\"");
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::int64_t number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }
  void factor(LaurentMonomial& mon, int sign) {
    char c = peek();
    if (c == '1') {
      ++pos_;
      return;
    }
    if (c != 'x' && c != 'y') fail("expected a variable");
    ++pos_;
    std::int64_t index = number();
    if (index < 1 || static_cast<std::size_t>(index) > n_) fail("variable index out of range");
    std::int64_t e = 1;
    if (peek() == '^') {
      ++pos_;
      e = number();
    }
    auto& vec = c == 'x' ? mon.x : mon.y;
    vec[static_cast<std::size_t>(index - 1)] += sign * e;
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentMonomial parse_monomial(std::string_view text, std::size_t n) {
  MonomialParser parser(text, n);
  LaurentMonomial mon = LaurentMonomial::one(n);
  parser.monomial(mon);
  if (!parser.done()) parser.fail("trailing input");
  return mon;
}

ClDegree operator+(const ClDegree& a, const ClDegree& b) {
  ClDegree out = a;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    out.x[i] += b.x[i];
    out.y[i] += b.y[i];
  }
  return out;
}

std::string to_string(const ClDegree& deg) {
  std::ostringstream out;
  auto vec = [&](const ExponentVector& v) {
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ")";
  };
  vec(deg.x);
  out << "x";
  vec(deg.y);
  return out.str();
}

LaurentMonomial vertex_label(const RatVector& p) {
  LaurentMonomial mon = LaurentMonomial::one(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::int64_t f = to_int64(floor(p[i]));
    mon.x[i] = f;
    mon.y[i] = -f;
  }
  return mon;
}

LaurentMonomial face_label(const std::vector<LaurentMonomial>& vertex_labels) {
  if (vertex_labels.empty()) throw std::invalid_argument("face_label: empty vertex set");
  LaurentMonomial out = vertex_labels.front();
  for (const auto& v : vertex_labels) out = lcm(out, v);
  return out;
}

ClDegree degree_of(const LaurentMonomial& mon, const ExactSeq& seq) {
  auto project = [&](const ExponentVector& e) {
    IntVector v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = Int(static_cast<long>(e[i]));
    IntVector image = seq.project(v);
    ExponentVector out(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) out[i] = to_int64(image[i]);
    return out;
  };
  return {project(mon.x), project(mon.y)};
}

LaurentMonomial translate_label_unchecked(const LaurentMonomial& mon, const ExponentVector& v) {
  LaurentMonomial out = mon;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.x[i] += v[i];
    out.y[i] -= v[i];
  }
  return out;
}

LaurentMonomial translate_label(const LaurentMonomial& mon, const ExponentVector& v, const ExactSeq& seq) {
  IntVector iv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) iv[i] = Int(static_cast<long>(v[i]));
  if (!seq.in_lattice(iv)) throw std::invalid_argument("translate_label: vector is not in L = im(B)");
  return translate_label_unchecked(mon, v);
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::size_t n, const LaurentMonomial& mon, std::int64_t coeff) : n_(n) {
  add_term(mon, coeff);
}

void Polynomial::add_term(const LaurentMonomial& mon, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(mon, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [mon, c] : other.terms_) add_term(mon, c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out(a.n_);
  for (const auto& [mon, c] : a.terms_) out.add_term(mon, -c);
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest monomial first, matching the usual reading order of binomials.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    auto [mon, c] = *it;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    std::int64_t mag = c < 0 ? -c : c;
    std::string m = to_string(mon);
    if (mag != 1) out << mag << (m == "1" ? "" : "*" + m);
    else out << m;
    first = false;
  }
  return out.str();
}

Polynomial parse_polynomial(std::string_view text, std::size_t n) {
  Polynomial poly(n);
  MonomialParser parser(text, n);
  if (parser.peek() == '0') {
    parser.advance();
    if (!parser.done()) parser.fail("trailing input after 0");
    return poly;
  }
  while (!parser.done()) {
    int sign = 1;
    while (parser.peek() == '+' || parser.peek() == '-') {
      if (parser.peek() == '-') sign = -sign;
      parser.advance();
    }
    LaurentMonomial mon = LaurentMonomial::one(n);
    parser.monomial(mon);
    poly.add_term(mon, sign);
  }
  return poly;
}

}  // namespace diagres
