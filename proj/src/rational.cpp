#include "diagres/rational.hpp"

#include <limits>

namespace diagres {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Int parse_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal");
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Int(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rat(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed decimal literal");
    Int w = whole.empty() ? Int(0) : parse_int(whole);
    Int f = frac.empty() ? Int(0) : parse_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))
      throw std::invalid_argument("malformed decimal literal");
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rat r = make_rat(w * scale + f, scale);
    return negative ? Rat(-r) : r;
  }
  return Rat(parse_int(text));
}

std::string to_string(const Int& value) { return value.get_str(); }

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Int floor(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int ceil(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rat& value) { return value.get_den() == 1; }

int sign(const Int& value) { return sgn(value); }
int sign(const Rat& value) { return sgn(value); }

std::int64_t to_int64(const Int& value) {
  if (!mpz_fits_slong_p(value.get_mpz_t()) || sizeof(long) < sizeof(std::int64_t))
    throw std::overflow_error("integer does not fit in 64 bits: " + value.get_str());
  return static_cast<std::int64_t>(value.get_si());
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rat(m(r, c));
  return out;
}

RatVector to_rat(const IntVector& v) { return RatVector(v.begin(), v.end()); }

}  // namespace diagres
