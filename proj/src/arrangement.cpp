#include "diagres/arrangement.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "diagres/linalg.hpp"

namespace diagres {

namespace {

// Calls f on every k-subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rat row_dot(const IntMatrix& B, std::size_t i, const RatVector& z) {
  Rat s = 0;
  for (std::size_t k = 0; k < B.cols(); ++k) s += Rat(B(i, k)) * z[k];
  return s;
}

std::int64_t row_dot(const IntMatrix& B, std::size_t i, const Shift& t) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < B.cols(); ++k) s += to_int64(B(i, k)) * t[k];
  return s;
}

std::size_t affine_rank(const std::vector<RatVector>& points) {
  if (points.size() <= 1) return 0;
  RatMatrix diffs(points.size() - 1, points.front().size());
  for (std::size_t r = 1; r < points.size(); ++r)
    for (std::size_t c = 0; c < diffs.cols(); ++c) diffs(r - 1, c) = points[r][c] - points[0][c];
  return rank(diffs);
}

RatVector barycenter(const std::vector<RatVector>& points) {
  RatVector c(points.front().size(), Rat(0));
  for (const auto& p : points)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += p[k];
  for (auto& v : c) v /= static_cast<long>(points.size());
  return c;
}

std::vector<std::size_t> at_rows(const Signature& sig) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i].at) rows.push_back(i);
  return rows;
}

Shift floor_vector(const RatVector& z) {
  Shift t(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) t[k] = to_int64(floor(z[k]));
  return t;
}

RatVector add_shift(const RatVector& z, const Shift& t) {
  RatVector out = z;
  for (std::size_t k = 0; k < z.size(); ++k) out[k] += Rat(static_cast<long>(t[k]));
  return out;
}

Shift negate(const Shift& t) {
  Shift out = t;
  for (auto& v : out) v = -v;
  return out;
}

// Vertices of the arrangement whose z lies in [0,1)^m. Each vertex class has exactly one
// such representative, because the quotient acts by integer translations of z.
std::vector<RatVector> vertex_representatives(const IntMatrix& B, const RatVector& a) {
  const std::size_t n = B.rows(), m = B.cols();
  std::set<RatVector> found;
  for_each_subset(n, m, [&](const std::vector<std::size_t>& rows) {
    IntMatrix sub = B.select_rows(rows);
    if (determinant(sub) == 0) return;
    RatMatrix subr = to_rat(sub);
    // Range of p_i over the closed unit cube fixes the candidate integer values.
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    for (auto i : rows) {
      Rat lo = a[i], hi = a[i];
      for (std::size_t k = 0; k < m; ++k) {
        if (B(i, k) < 0) lo += Rat(B(i, k));
        else hi += Rat(B(i, k));
      }
      ranges.emplace_back(to_int64(ceil(lo)), to_int64(floor(hi)));
    }
    std::vector<std::int64_t> j(m);
    std::function<void(std::size_t)> rec = [&](std::size_t d) {
      if (d == m) {
        RatVector rhs(m);
        for (std::size_t r = 0; r < m; ++r) rhs[r] = Rat(static_cast<long>(j[r])) - a[rows[r]];
        auto z = solve_linear(subr, rhs);
        if (!z) return;
        for (const auto& v : *z)
          if (v < 0 || v >= 1) return;
        found.insert(*z);
        return;
      }
      for (std::int64_t v = ranges[d].first; v <= ranges[d].second; ++v) {
        j[d] = v;
        rec(d + 1);
      }
    };
    rec(0);
  });
  return {found.begin(), found.end()};
}

// Coordinates of v in the basis `basis` (columns), which must span a space containing v.
RatVector coordinates_in(const std::vector<RatVector>& basis, const RatVector& v) {
  RatMatrix M(v.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < v.size(); ++r) M(r, c) = basis[c][r];
  auto coords = solve_linear(M, v);
  if (!coords) throw std::logic_error("orientation: vector outside the cell's span");
  return *coords;
}

struct Builder {
  const IntMatrix& B;
  const RatVector& a;
  std::size_t m;
  std::vector<std::map<Signature, Cell>> by_dim;
  // Faces are recorded by signature first and resolved to ids once all cells are known.
  std::map<std::pair<std::size_t, Signature>, std::vector<std::pair<Signature, Shift>>> pending_faces;

  Builder(const IntMatrix& b, const RatVector& av) : B(b), a(av), m(b.cols()), by_dim(b.cols() + 1) {}

  std::size_t dimension(const Signature& sig) const {
    auto rows = at_rows(sig);
    if (rows.empty()) return m;
    return m - rank(to_rat(B.select_rows(rows)));
  }

  void add(const Signature& canonical) {
    std::size_t d = dimension(canonical);
    if (by_dim[d].count(canonical)) return;
    Cell cell;
    cell.dim = d;
    cell.signature = canonical;
    auto verts = closure_vertices(B, a, canonical);
    if (verts.empty()) throw std::logic_error("arrangement: empty cell " + to_string(canonical));
    cell.sample_point = barycenter(verts);
    auto rows = at_rows(canonical);
    cell.directions = rank_and_kernel(to_rat(B.select_rows(rows))).kernel;
    if (cell.directions.size() != d) throw std::logic_error("arrangement: direction basis mismatch");
    by_dim[d].emplace(canonical, std::move(cell));

    if (d == 0) return;
    std::vector<std::pair<Signature, Shift>> faces;
    for (std::size_t i = 0; i < canonical.size(); ++i) {
      if (canonical[i].at) continue;
      for (std::int64_t t : {canonical[i].j, canonical[i].j + 1}) {
        std::vector<RatVector> on;
        for (const auto& v : verts)
          if (row_dot(B, i, v) + a[i] == Rat(static_cast<long>(t))) on.push_back(v);
        if (on.empty() || affine_rank(on) + 1 != d) continue;
        auto form = canonical_form(B, a, point_signature(B, a, barycenter(on)));
        std::pair<Signature, Shift> entry{form.signature, form.shift};
        if (std::find(faces.begin(), faces.end(), entry) == faces.end()) faces.push_back(entry);
      }
    }
    for (const auto& [sig, shift] : faces) add(sig);
    pending_faces[{d, canonical}] = std::move(faces);
  }
};

}  // namespace

std::string to_string(const Signature& sig) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out << " ";
    if (sig[i].at) out << "=" << sig[i].j;
    else out << "(" << sig[i].j << "," << sig[i].j + 1 << ")";
  }
  out << "]";
  return out.str();
}

RatVector ambient_point(const IntMatrix& B, const RatVector& a, const RatVector& z) {
  RatVector p(B.rows());
  for (std::size_t i = 0; i < B.rows(); ++i) p[i] = row_dot(B, i, z) + a[i];
  return p;
}

Signature point_signature(const IntMatrix& B, const RatVector& a, const RatVector& z) {
  RatVector p = ambient_point(B, a, z);
  Signature sig(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) sig[i] = {is_integer(p[i]), to_int64(floor(p[i]))};
  return sig;
}

bool satisfies_signature(const IntMatrix& B, const RatVector& a, const Signature& sig, const RatVector& z) {
  RatVector p = ambient_point(B, a, z);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat j(static_cast<long>(sig[i].j));
    if (sig[i].at ? p[i] != j : !(p[i] > j && p[i] < j + 1)) return false;
  }
  return true;
}

Signature shift_signature(const IntMatrix& B, const Signature& sig, const Shift& t) {
  Signature out = sig;
  for (std::size_t i = 0; i < sig.size(); ++i) out[i].j += row_dot(B, i, t);
  return out;
}

std::vector<RatVector> closure_vertices(const IntMatrix& B, const RatVector& a, const Signature& sig) {
  const std::size_t m = B.cols();
  // Candidate supporting hyperplanes (coordinate, value).
  std::vector<std::pair<std::size_t, std::int64_t>> planes;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    planes.emplace_back(i, sig[i].j);
    if (!sig[i].at) planes.emplace_back(i, sig[i].j + 1);
  }
  auto in_closure = [&](const RatVector& z) {
    for (std::size_t i = 0; i < sig.size(); ++i) {
      Rat p = row_dot(B, i, z) + a[i];
      Rat j(static_cast<long>(sig[i].j));
      if (sig[i].at ? p != j : (p < j || p > j + 1)) return false;
    }
    return true;
  };
  std::set<RatVector> found;
  for_each_subset(planes.size(), m, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> rows;
    RatVector rhs;
    for (auto k : pick) {
      auto [i, j] = planes[k];
      if (std::find(rows.begin(), rows.end(), i) != rows.end()) return;
      rows.push_back(i);
      rhs.push_back(Rat(static_cast<long>(j)) - a[i]);
    }
    RatMatrix sub = to_rat(B.select_rows(rows));
    if (determinant(sub) == 0) return;
    auto z = solve_linear(sub, rhs);
    if (z && in_closure(*z)) found.insert(*z);
  });
  return {found.begin(), found.end()};
}

CanonicalForm canonical_form(const IntMatrix& B, const RatVector& a, const Signature& sig) {
  auto verts = closure_vertices(B, a, sig);
  if (verts.empty()) throw std::invalid_argument("canonical_form: empty cell " + to_string(sig));
  Shift k = floor_vector(verts.front());
  return {shift_signature(B, sig, negate(k)), k};
}

std::vector<std::size_t> QuotientComplex::counts() const {
  std::vector<std::size_t> out;
  for (const auto& level : cells) out.push_back(level.size());
  return out;
}

long QuotientComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < cells.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(cells[d].size());
  return chi;
}

std::size_t QuotientComplex::find(std::size_t dim, const Signature& sig) const {
  const auto& level = cells.at(dim);
  auto it = std::lower_bound(level.begin(), level.end(), sig,
                             [](const Cell& c, const Signature& s) { return c.signature < s; });
  if (it == level.end() || it->signature != sig) throw std::out_of_range("no cell with signature " + to_string(sig));
  return static_cast<std::size_t>(it - level.begin());
}

QuotientComplex enumerate_cells(const ExactSeq& seq, const Deformation& eps) {
  const IntMatrix& B = seq.B;
  const std::size_t m = B.cols(), n = B.rows();
  if (m == 0 || m > 3) throw std::invalid_argument("enumerate_cells: supported for 1 <= m <= 3");
  if (eps.a.size() != n) throw std::invalid_argument("enumerate_cells: deformation has wrong length");

  Builder builder(B, eps.a);
  auto reps = vertex_representatives(B, eps.a);
  if (reps.empty()) throw std::logic_error("enumerate_cells: no vertices found");

  // Every top cell is bounded, so it has a vertex; its germ at that vertex is an open
  // orthant of the hyperplanes through the vertex.
  for (const auto& z : reps) {
    RatVector p = ambient_point(B, eps.a, z);
    std::vector<std::size_t> through;
    for (std::size_t i = 0; i < n; ++i)
      if (is_integer(p[i])) through.push_back(i);
    const std::size_t K = through.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << K); ++mask) {
      std::vector<LinearConstraint> cone;
      for (std::size_t k = 0; k < K; ++k) {
        RatVector row(m);
        for (std::size_t c = 0; c < m; ++c) row[c] = Rat(B(through[k], c));
        cone.push_back((mask >> k) & 1 ? greater(row, 0) : less(row, 0));
      }
      if (!feasible_point(cone, m)) continue;
      Signature sig(n);
      for (std::size_t i = 0; i < n; ++i) sig[i] = {false, to_int64(floor(p[i]))};
      for (std::size_t k = 0; k < K; ++k)
        if (!((mask >> k) & 1)) sig[through[k]].j -= 1;
      builder.add(canonical_form(B, eps.a, sig).signature);
    }
  }

  QuotientComplex qc;
  qc.m = m;
  qc.n = n;
  qc.B = B;
  qc.a = eps.a;
  qc.cells.resize(m + 1);
  for (std::size_t d = 0; d <= m; ++d)
    for (auto& [sig, cell] : builder.by_dim[d]) qc.cells[d].push_back(std::move(cell));

  // The vertices reached from the top cells must be exactly the representatives found directly.
  if (qc.cells[0].size() != reps.size())
    throw std::logic_error("enumerate_cells: vertex classes from faces disagree with direct vertex search");
  for (const auto& z : reps) qc.find(0, point_signature(B, eps.a, z));

  for (std::size_t d = 0; d <= m; ++d) {
    for (auto& cell : qc.cells[d]) {
      for (const auto& z : closure_vertices(B, eps.a, cell.signature)) {
        Shift t = floor_vector(z);
        RatVector base = add_shift(z, negate(t));
        cell.vertices.push_back({qc.find(0, point_signature(B, eps.a, base)), t, 0});
      }
      if (d == 0) continue;
      for (const auto& [fsig, shift] : builder.pending_faces.at({d, cell.signature})) {
        std::size_t f = qc.find(d - 1, fsig);
        const Cell& face = qc.cells[d - 1][f];
        // Orientation: (outward vector, face basis) compared with the cell's basis.
        RatVector out = add_shift(face.sample_point, shift);
        for (std::size_t k = 0; k < m; ++k) out[k] -= cell.sample_point[k];
        RatMatrix M(d, d);
        auto oc = coordinates_in(cell.directions, out);
        for (std::size_t r = 0; r < d; ++r) M(r, 0) = oc[r];
        for (std::size_t c = 1; c < d; ++c) {
          auto fc = coordinates_in(cell.directions, face.directions[c - 1]);
          for (std::size_t r = 0; r < d; ++r) M(r, c) = fc[r];
        }
        int s = sign(determinant(M));
        if (s == 0) throw std::logic_error("enumerate_cells: degenerate orientation");
        cell.faces.push_back({f, shift, s});
      }
    }
  }
  for (std::size_t d = 1; d <= m; ++d)
    for (std::size_t c = 0; c < qc.cells[d].size(); ++c)
      for (const auto& ref : qc.cells[d][c].faces) qc.cells[d - 1][ref.cell].cofaces.push_back({c, negate(ref.shift), ref.sign});
  return qc;
}

TransversalityReport transversality_report(const QuotientComplex& qc) {
  TransversalityReport report;
  for (std::size_t v = 0; v < qc.cells[0].size(); ++v) {
    RatVector p = qc.vertex_ambient(v);
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (is_integer(p[i])) on.push_back(i);
    if (on.size() == qc.m) continue;
    report.transversal = false;
    std::ostringstream msg;
    msg << "vertex " << v << " lies on " << on.size() << " hyperplanes (";
    for (std::size_t k = 0; k < on.size(); ++k) msg << (k ? "," : "") << "x" << on[k] + 1;
    msg << "), expected " << qc.m;
    report.violations.push_back(msg.str());
  }
  return report;
}

RatVector vertex_ambient_coords(const ExactSeq& seq, const Deformation& eps, const Signature& vertex) {
  auto rows = at_rows(vertex);
  RatMatrix sub = to_rat(seq.B.select_rows(rows));
  RatVector rhs;
  for (auto i : rows) rhs.push_back(Rat(static_cast<long>(vertex[i].j)) - eps.a[i]);
  auto z = solve_linear(sub, rhs);
  if (!z || rank(sub) != seq.m()) throw std::invalid_argument("vertex_ambient_coords: signature is not a vertex");
  return ambient_point(seq.B, eps.a, *z);
}

}  // namespace diagres
