#include "diagres/complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace diagres {

namespace {

bool term_less(const BoundaryTerm& a, const BoundaryTerm& b) {
  return std::tie(a.col, a.row, a.monomial, a.sign) < std::tie(b.col, b.row, b.monomial, b.sign);
}

ExponentVector exponent_sum(const LaurentMonomial& mon) {
  ExponentVector s(mon.n());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = mon.x[i] + mon.y[i];
  return s;
}

}  // namespace

Polynomial BoundaryMatrix::entry(std::size_t row, std::size_t col, std::size_t n) const {
  Polynomial p(n);
  for (const auto& t : terms)
    if (t.row == row && t.col == col) p.add_term(t.monomial, t.sign);
  return p;
}

std::vector<std::size_t> GradedFreeComplex::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& g : generators) r.push_back(g.size());
  return r;
}

ExponentVector lattice_vector(const IntMatrix& B, const Shift& t) {
  ExponentVector v(B.rows(), 0);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t k = 0; k < B.cols(); ++k) v[i] += to_int64(B(i, k)) * t[k];
  return v;
}

std::vector<std::vector<LaurentMonomial>> cell_labels(const QuotientComplex& qc) {
  std::vector<std::vector<LaurentMonomial>> labels(qc.cells.size());
  for (std::size_t v = 0; v < qc.cells[0].size(); ++v) labels[0].push_back(vertex_label(qc.vertex_ambient(v)));
  for (std::size_t d = 1; d < qc.cells.size(); ++d) {
    for (const auto& cell : qc.cells[d]) {
      std::vector<LaurentMonomial> verts;
      for (const auto& ref : cell.vertices)
        verts.push_back(translate_label_unchecked(labels[0][ref.cell], lattice_vector(qc.B, ref.shift)));
      labels[d].push_back(face_label(verts));
    }
  }
  return labels;
}

GradedFreeComplex build_complex(const QuotientComplex& qc, const ExactSeq& seq) {
  auto labels = cell_labels(qc);
  GradedFreeComplex out;
  out.n = qc.n;
  out.generators.resize(qc.cells.size());
  for (std::size_t d = 0; d < qc.cells.size(); ++d)
    for (std::size_t c = 0; c < qc.cells[d].size(); ++c)
      out.generators[d].push_back({c, labels[d][c], degree_of(labels[d][c], seq)});

  for (std::size_t d = 1; d < qc.cells.size(); ++d) {
    BoundaryMatrix bm;
    bm.rows = qc.cells[d - 1].size();
    bm.cols = qc.cells[d].size();
    for (std::size_t c = 0; c < bm.cols; ++c) {
      for (const auto& ref : qc.cells[d][c].faces) {
        LaurentMonomial face = translate_label_unchecked(labels[d - 1][ref.cell], lattice_vector(qc.B, ref.shift));
        LaurentMonomial ratio = labels[d][c] / face;
        if (!ratio.is_polynomial()) {
          std::ostringstream msg;
          msg << "build_complex: face label " << to_string(face) << " does not divide " << to_string(labels[d][c])
              << " (dim " << d << " cell " << c << ")";
          throw std::logic_error(msg.str());
        }
        bm.terms.push_back({ref.cell, c, ref.sign, ratio});
      }
    }
    std::sort(bm.terms.begin(), bm.terms.end(), term_less);
    out.boundaries.push_back(std::move(bm));
  }
  return out;
}

Polynomial Binomial::polynomial() const {
  Polynomial p(plus.n(), plus, 1);
  p.add_term(minus, -1);
  return p;
}

ExponentVector Binomial::difference() const {
  ExponentVector d(plus.n());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = plus.x[i] - minus.x[i];
  return d;
}

std::vector<Binomial> jl_binomials(const GradedFreeComplex& c) {
  std::vector<Binomial> out;
  if (c.generators.size() < 2) return out;
  const auto& d1 = c.boundary(1);
  for (std::size_t col = 0; col < d1.cols; ++col) {
    // Clear the row labels: each term becomes m_E / (L-translate), an element of the lattice module.
    std::vector<std::pair<LaurentMonomial, int>> cleared;
    for (const auto& t : d1.terms)
      if (t.col == col) cleared.emplace_back(t.monomial * c.generators[0][t.row].label, t.sign);
    if (cleared.size() != 2 || cleared[0].second == cleared[1].second) continue;
    if (cleared[0].first == cleared[1].first) continue;
    LaurentMonomial g = gcd(cleared[0].first, cleared[1].first);
    const auto& pos = cleared[0].second > 0 ? cleared[0].first : cleared[1].first;
    const auto& neg = cleared[0].second > 0 ? cleared[1].first : cleared[0].first;
    out.push_back({pos / g, neg / g});
  }
  return out;
}

GradedFreeComplex canonicalize(const GradedFreeComplex& c) {
  GradedFreeComplex out = c;
  std::vector<std::vector<std::size_t>> new_index(c.generators.size());
  for (std::size_t d = 0; d < c.generators.size(); ++d) {
    const auto& gens = c.generators[d];
    std::vector<std::size_t> order(gens.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t i) {
      return std::make_tuple(gens[i].degree, exponent_sum(gens[i].label), to_string(gens[i].label), gens[i].cell);
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    new_index[d].resize(gens.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      out.generators[d][pos] = gens[order[pos]];
      new_index[d][order[pos]] = pos;
    }
  }
  for (std::size_t d = 1; d < c.generators.size(); ++d) {
    for (auto& t : out.boundary(d).terms) {
      t.row = new_index[d - 1][t.row];
      t.col = new_index[d][t.col];
    }
  }
  // Sign normalization, lowest dimension first; a flip of a d-generator negates its column in
  // d_d and its row in d_{d+1}, which is then normalized by its own columns.
  for (std::size_t d = 1; d < out.generators.size(); ++d) {
    auto& bm = out.boundary(d);
    for (std::size_t col = 0; col < bm.cols; ++col) {
      const BoundaryTerm* lead = nullptr;
      for (const auto& t : bm.terms) {
        if (t.col != col) continue;
        if (!lead || t.row < lead->row || (t.row == lead->row && lead->monomial < t.monomial)) lead = &t;
      }
      if (!lead || lead->sign > 0) continue;
      for (auto& t : bm.terms)
        if (t.col == col) t.sign = -t.sign;
      if (d + 1 < out.generators.size())
        for (auto& t : out.boundary(d + 1).terms)
          if (t.row == col) t.sign = -t.sign;
    }
  }
  for (auto& bm : out.boundaries) std::sort(bm.terms.begin(), bm.terms.end(), term_less);
  return out;
}

// --- JSON -------------------------------------------------------------------

nlohmann::json monomial_to_json(const LaurentMonomial& mon) {
  nlohmann::json j = {{"x", nlohmann::json::object()}, {"y", nlohmann::json::object()}};
  for (std::size_t i = 0; i < mon.n(); ++i) {
    if (mon.x[i]) j["x"][std::to_string(i + 1)] = mon.x[i];
    if (mon.y[i]) j["y"][std::to_string(i + 1)] = mon.y[i];
  }
  return j;
}

LaurentMonomial monomial_from_json(const nlohmann::json& j, std::size_t n) {
  LaurentMonomial mon = LaurentMonomial::one(n);
  for (const char* side : {"x", "y"}) {
    if (!j.contains(side)) continue;
    auto& vec = side[0] == 'x' ? mon.x : mon.y;
    for (const auto& [key, value] : j.at(side).items()) {
      std::size_t i = std::stoul(key);
      if (i < 1 || i > n) throw std::invalid_argument("monomial index out of range: " + key);
      vec[i - 1] = value.get<std::int64_t>();
    }
  }
  return mon;
}

nlohmann::json complex_to_json(const GradedFreeComplex& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["ranks"] = c.ranks();
  j["generators"] = nlohmann::json::array();
  for (std::size_t d = 0; d < c.generators.size(); ++d) {
    for (const auto& g : c.generators[d]) {
      j["generators"].push_back({{"dim", d},
                                 {"cell", g.cell},
                                 {"degree", {{"x", g.degree.x}, {"y", g.degree.y}}},
                                 {"label", to_string(g.label)},
                                 {"monomial", monomial_to_json(g.label)}});
    }
  }
  j["boundaries"] = nlohmann::json::array();
  for (std::size_t d = 1; d < c.generators.size(); ++d) {
    const auto& bm = c.boundary(d);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& t : bm.terms)
      entries.push_back({{"row", t.row}, {"col", t.col}, {"sign", t.sign}, {"monomial", monomial_to_json(t.monomial)}});
    j["boundaries"].push_back({{"dim", d}, {"rows", bm.rows}, {"cols", bm.cols}, {"entries", entries}});
  }
  return j;
}

GradedFreeComplex complex_from_json(const nlohmann::json& j) {
  GradedFreeComplex c;
  c.n = j.at("n").get<std::size_t>();
  auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
  c.generators.resize(ranks.size());
  for (const auto& g : j.at("generators")) {
    std::size_t d = g.at("dim").get<std::size_t>();
    if (d >= ranks.size()) throw std::invalid_argument("complex JSON: generator dimension out of range");
    Generator gen;
    gen.cell = g.value("cell", c.generators[d].size());
    gen.label = g.contains("monomial") ? monomial_from_json(g.at("monomial"), c.n)
                                       : parse_monomial(g.at("label").get<std::string>(), c.n);
    gen.degree.x = g.at("degree").at("x").get<ExponentVector>();
    gen.degree.y = g.at("degree").at("y").get<ExponentVector>();
    c.generators[d].push_back(std::move(gen));
  }
  for (std::size_t d = 0; d < ranks.size(); ++d)
    if (c.generators[d].size() != ranks[d]) throw std::invalid_argument("complex JSON: ranks disagree with generators");
  c.boundaries.resize(ranks.empty() ? 0 : ranks.size() - 1);
  for (const auto& b : j.at("boundaries")) {
    std::size_t d = b.at("dim").get<std::size_t>();
    if (d < 1 || d >= ranks.size()) throw std::invalid_argument("complex JSON: boundary dimension out of range");
    BoundaryMatrix bm;
    bm.rows = b.at("rows").get<std::size_t>();
    bm.cols = b.at("cols").get<std::size_t>();
    if (bm.rows != ranks[d - 1] || bm.cols != ranks[d]) throw std::invalid_argument("complex JSON: boundary shape");
    for (const auto& e : b.at("entries")) {
      BoundaryTerm t{e.at("row").get<std::size_t>(), e.at("col").get<std::size_t>(), e.at("sign").get<int>(),
                     monomial_from_json(e.at("monomial"), c.n)};
      if (t.row >= bm.rows || t.col >= bm.cols || (t.sign != 1 && t.sign != -1))
        throw std::invalid_argument("complex JSON: bad boundary entry");
      bm.terms.push_back(std::move(t));
    }
    std::sort(bm.terms.begin(), bm.terms.end(), term_less);
    c.boundary(d) = std::move(bm);
  }
  return c;
}

// --- comparison with reference matrices --------------------------------------

PolyMatrix to_poly_matrix(const BoundaryMatrix& m, std::size_t n) {
  PolyMatrix out(m.rows, std::vector<Polynomial>(m.cols, Polynomial(n)));
  for (const auto& t : m.terms) out[t.row][t.col].add_term(t.monomial, t.sign);
  return out;
}

PolyMatrix parse_poly_matrix(const std::vector<std::vector<std::string>>& rows, std::size_t n) {
  PolyMatrix out;
  for (const auto& row : rows) {
    std::vector<Polynomial> r;
    for (const auto& cell : row) r.push_back(parse_polynomial(cell, n));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string sign_free(const Polynomial& p) { return std::min(to_string(p), to_string(-p)); }

// Backtracking over a chain of consecutive matrices. Level l has the rows of mats[l]
// (and level K the columns of the last matrix).
class ChainMatcher {
 public:
  ChainMatcher(const std::vector<PolyMatrix>& ours, const std::vector<PolyMatrix>& ref) : ours_(ours), ref_(ref) {}

  bool run() {
    const std::size_t K = ref_.size();
    if (ours_.size() != K || K == 0) return false;
    for (std::size_t k = 0; k < K; ++k) {
      if (rows(ours_[k]) != rows(ref_[k]) || cols(ours_[k]) != cols(ref_[k])) return false;
      if (k + 1 < K && cols(ref_[k]) != rows(ref_[k + 1])) return false;
    }
    sizes_.clear();
    for (std::size_t k = 0; k < K; ++k) sizes_.push_back(rows(ref_[k]));
    sizes_.push_back(cols(ref_[K - 1]));

    for (std::size_t l = 0; l <= K; ++l) {
      our_keys_.push_back({});
      ref_keys_.push_back({});
      for (std::size_t g = 0; g < sizes_[l]; ++g) {
        our_keys_[l].push_back(key(ours_, l, g));
        ref_keys_[l].push_back(key(ref_, l, g));
      }
    }
    build_order();
    assign_.assign(K + 1, {});
    sign_.assign(K + 1, {});
    used_.assign(K + 1, {});
    for (std::size_t l = 0; l <= K; ++l) {
      assign_[l].assign(sizes_[l], SIZE_MAX);
      sign_[l].assign(sizes_[l], 0);
      used_[l].assign(sizes_[l], false);
    }
    return search(0);
  }

 private:
  static std::size_t rows(const PolyMatrix& m) { return m.size(); }
  static std::size_t cols(const PolyMatrix& m) { return m.empty() ? 0 : m[0].size(); }

  // Multiset of sign-free entries in the generator's column (below) and row (above).
  std::pair<std::vector<std::string>, std::vector<std::string>> key(const std::vector<PolyMatrix>& mats, std::size_t l,
                                                                    std::size_t g) const {
    std::vector<std::string> below, above;
    if (l > 0)
      for (const auto& row : mats[l - 1]) below.push_back(sign_free(row[g]));
    if (l < mats.size())
      for (const auto& e : mats[l][g]) above.push_back(sign_free(e));
    std::sort(below.begin(), below.end());
    std::sort(above.begin(), above.end());
    return {below, above};
  }

  // Breadth-first order over reference generators so that most choices are constrained early.
  void build_order() {
    std::vector<std::vector<bool>> seen;
    for (auto s : sizes_) seen.emplace_back(s, false);
    for (std::size_t l0 = 0; l0 < sizes_.size(); ++l0) {
      for (std::size_t g0 = 0; g0 < sizes_[l0]; ++g0) {
        if (seen[l0][g0]) continue;
        std::queue<std::pair<std::size_t, std::size_t>> q;
        q.push({l0, g0});
        seen[l0][g0] = true;
        while (!q.empty()) {
          auto [l, g] = q.front();
          q.pop();
          order_.push_back({l, g});
          if (l > 0)
            for (std::size_t r = 0; r < sizes_[l - 1]; ++r)
              if (!ref_[l - 1][r][g].is_zero() && !seen[l - 1][r]) seen[l - 1][r] = true, q.push({l - 1, r});
          if (l < ref_.size())
            for (std::size_t c = 0; c < sizes_[l + 1]; ++c)
              if (!ref_[l][g][c].is_zero() && !seen[l + 1][c]) seen[l + 1][c] = true, q.push({l + 1, c});
        }
      }
    }
  }

  bool consistent(std::size_t l, std::size_t g, std::size_t h, int s) const {
    auto same = [](const Polynomial& ref, const Polynomial& our, int sgn) { return sgn > 0 ? ref == our : ref == -our; };
    if (l > 0)
      for (std::size_t r = 0; r < sizes_[l - 1]; ++r)
        if (assign_[l - 1][r] != SIZE_MAX && !same(ref_[l - 1][r][g], ours_[l - 1][assign_[l - 1][r]][h], s * sign_[l - 1][r]))
          return false;
    if (l < ref_.size())
      for (std::size_t c = 0; c < sizes_[l + 1]; ++c)
        if (assign_[l + 1][c] != SIZE_MAX && !same(ref_[l][g][c], ours_[l][h][assign_[l + 1][c]], s * sign_[l + 1][c]))
          return false;
    return true;
  }

  bool search(std::size_t step) {
    if (step == order_.size()) return true;
    auto [l, g] = order_[step];
    for (std::size_t h = 0; h < sizes_[l]; ++h) {
      if (used_[l][h] || our_keys_[l][h] != ref_keys_[l][g]) continue;
      for (int s : {1, -1}) {
        if (!consistent(l, g, h, s)) continue;
        assign_[l][g] = h;
        sign_[l][g] = s;
        used_[l][h] = true;
        if (search(step + 1)) return true;
        assign_[l][g] = SIZE_MAX;
        sign_[l][g] = 0;
        used_[l][h] = false;
      }
    }
    return false;
  }

  const std::vector<PolyMatrix>& ours_;
  const std::vector<PolyMatrix>& ref_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>> our_keys_, ref_keys_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::vector<std::vector<std::size_t>> assign_;
  std::vector<std::vector<int>> sign_;
  std::vector<std::vector<bool>> used_;
};

}  // namespace

MatchResult match_signed_permutation(const std::vector<PolyMatrix>& ours, const std::vector<PolyMatrix>& reference) {
  MatchResult result;
  if (ChainMatcher(ours, reference).run()) {
    result.matched = true;
    result.shared_ordering = true;
    result.detail = "matched with one generator ordering across all matrices";
    return result;
  }
  if (reference.size() == 1) {
    result.detail = "no signed permutation matches";
    return result;
  }
  std::ostringstream detail;
  bool all = true;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    bool ok = ChainMatcher({ours[k]}, {reference[k]}).run();
    all = all && ok;
    detail << "matrix " << k + 1 << (ok ? " matches" : " does not match") << " on its own; ";
  }
  result.matched = all;
  result.detail = "no common ordering; " + detail.str();
  return result;
}

}  // namespace diagres
