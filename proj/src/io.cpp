#include "diagres/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <regex>
#include <sstream>

namespace diagres {

namespace {

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("fan JSON: missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("fan JSON: field \"") + key + "\" has the wrong type");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string rational_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaError("fan JSON: epsilon entries must be rational strings such as \"1/10\" or integers");
}

std::string m2_poly(const Polynomial& p) {
  static const std::regex var("([xy])([0-9]+)");
  return std::regex_replace(to_string(p), var, "$1_$2");
}

}  // namespace

FanInput parse_fan_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("fan JSON: top level must be an object");
  FanInput in;
  in.fan.m = get_field<int>(j, "m");
  in.fan.rays = get_field<std::vector<std::vector<std::int64_t>>>(j, "rays");
  in.fan.max_cones = get_field<std::vector<Cone>>(j, "max_cones");
  if (in.fan.m <= 0) throw SchemaError("fan JSON: m must be positive");
  for (const auto& r : in.fan.rays)
    if (r.size() != static_cast<std::size_t>(in.fan.m)) throw SchemaError("fan JSON: every ray needs m coordinates");
  const std::size_t n = in.fan.rays.size();
  for (const auto& c : in.fan.max_cones)
    for (int r : c)
      if (r < 0 || static_cast<std::size_t>(r) >= n) throw SchemaError("fan JSON: cone refers to a missing ray");
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) {
    if (!j.at("epsilon").is_array()) throw SchemaError("fan JSON: epsilon must be an array");
    std::vector<std::string> eps;
    for (const auto& v : j.at("epsilon")) eps.push_back(rational_text(v));
    in.epsilon = eps;
  }
  if (j.contains("cl_basis") && !j.at("cl_basis").is_null()) {
    auto rows = get_field<std::vector<std::vector<long>>>(j, "cl_basis");
    std::vector<IntVector> basis;
    for (const auto& r : rows) {
      if (r.size() != n) throw SchemaError("fan JSON: cl_basis vectors need one entry per ray");
      IntVector v;
      for (long e : r) v.push_back(Int(e));
      basis.push_back(v);
    }
    in.basis = basis;
  }
  if (j.contains("removed_rays") && !j.at("removed_rays").is_null()) {
    in.removed_rays = get_field<std::vector<int>>(j, "removed_rays");
    for (int r : in.removed_rays)
      if (r < 0 || static_cast<std::size_t>(r) >= n) throw SchemaError("fan JSON: removed ray out of range");
  }
  return in;
}

std::vector<std::string> parse_epsilon_list(const std::string& text) {
  auto items = split(text, ',');
  for (const auto& s : items) {
    try {
      parse_rat(s);
    } catch (const std::exception&) {
      throw SchemaError("--epsilon: cannot parse \"" + s + "\" as a rational");
    }
  }
  return items;
}

std::vector<IntVector> parse_basis_list(const std::string& text) {
  std::vector<IntVector> out;
  for (const auto& row : split(text, ';')) {
    IntVector v;
    for (const auto& e : split(row, ',')) {
      try {
        v.push_back(Int(std::stol(e)));
      } catch (const std::exception&) {
        throw SchemaError("--basis: cannot parse \"" + e + "\" as an integer");
      }
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& e : split(text, ',')) {
    try {
      out.push_back(std::stoi(e));
    } catch (const std::exception&) {
      throw SchemaError("cannot parse \"" + e + "\" as an index");
    }
  }
  return out;
}

Deformation make_deformation(const std::optional<std::vector<std::string>>& epsilon, std::size_t n) {
  if (!epsilon) return Deformation::zero(n);
  if (epsilon->size() != n) throw SchemaError("epsilon needs one entry per ray");
  Deformation d;
  for (const auto& s : *epsilon) {
    try {
      d.a.push_back(parse_rat(s));
    } catch (const std::exception&) {
      throw SchemaError("epsilon: cannot parse \"" + s + "\"");
    }
  }
  return d;
}

nlohmann::json classification_json(const Fan& fan, const FanClassification& fc, const ExactSeq& seq) {
  nlohmann::json j;
  j["m"] = fan.m;
  j["n"] = fan.n();
  j["complete"] = fc.completeness_checked ? nlohmann::json(fc.complete) : nlohmann::json("not checked");
  j["smooth"] = fc.smooth;
  j["unimodular"] = fc.unimodular;
  j["simplicial"] = fc.simplicial;
  j["cl_rank"] = seq.cl_rank;
  std::vector<std::vector<std::string>> pi;
  for (std::size_t r = 0; r < seq.pi.rows(); ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < seq.pi.cols(); ++c) row.push_back(to_string(seq.pi(r, c)));
    pi.push_back(row);
  }
  j["pi"] = pi;
  auto ideal = irrelevant_ideal(fan);
  j["irrelevant_ideal"] = generators_string(ideal, 'x');
  j["irrelevant_primes"] = prime_decomposition_string(ideal, 'x');
  return j;
}

std::string complex_table(const GradedFreeComplex& c) {
  std::ostringstream out;
  out << "ranks:";
  for (auto r : c.ranks()) out << " " << r;
  out << "\n\n";
  std::size_t width = 5;
  for (const auto& level : c.generators)
    for (const auto& g : level) width = std::max(width, to_string(g.label).size());
  out << std::left << std::setw(6) << "cell" << std::setw(static_cast<int>(width) + 2) << "label"
      << "degree\n";
  const char* names = "vEFG";
  for (std::size_t d = 0; d < c.generators.size(); ++d) {
    for (std::size_t i = 0; i < c.generators[d].size(); ++i) {
      const auto& g = c.generators[d][i];
      std::string name = std::string(1, d < 4 ? names[d] : 'C') + std::to_string(i);
      out << std::setw(6) << name << std::setw(static_cast<int>(width) + 2) << to_string(g.label) << to_string(g.degree)
          << "\n";
    }
  }
  for (std::size_t d = 1; d <= c.top(); ++d) {
    out << "\nd" << d << " (" << c.boundary(d).rows << " x " << c.boundary(d).cols << "):\n";
    auto pm = to_poly_matrix(c.boundary(d), c.n);
    std::vector<std::size_t> widths(c.boundary(d).cols, 1);
    for (const auto& row : pm)
      for (std::size_t k = 0; k < row.size(); ++k) widths[k] = std::max(widths[k], to_string(row[k]).size());
    for (const auto& row : pm) {
      out << "  ";
      for (std::size_t k = 0; k < row.size(); ++k) out << std::setw(static_cast<int>(widths[k]) + 2) << to_string(row[k]);
      out << "\n";
    }
  }
  return out.str();
}

std::string quotient_svg(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                         const std::string& title) {
  if (qc.m > 2) throw std::invalid_argument("quotient_svg: only rank 1 and 2 complexes can be drawn");
  auto to_xy = [&](const RatVector& z) {
    double x = z[0].get_d();
    double y = qc.m == 2 ? z[1].get_d() : 0.0;
    return std::pair<double, double>{x, y};
  };
  // Bounding box over every closure vertex of every representative.
  double xmin = 0, xmax = 1, ymin = 0, ymax = qc.m == 2 ? 1 : 0;
  for (const auto& level : qc.cells)
    for (const auto& cell : level)
      for (const auto& z : closure_vertices(qc.B, qc.a, cell.signature)) {
        auto [x, y] = to_xy(z);
        xmin = std::min(xmin, x), xmax = std::max(xmax, x), ymin = std::min(ymin, y), ymax = std::max(ymax, y);
      }
  const double scale = 320.0 / std::max({xmax - xmin, ymax - ymin, 1.0});
  const double margin = 60.0;
  const double w = (xmax - xmin) * scale + 2 * margin, h = (ymax - ymin) * scale + 2 * margin;
  auto px = [&](double x) { return margin + (x - xmin) * scale; };
  auto py = [&](double y) { return h - margin - (y - ymin) * scale; };

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << " " << h << "\">\n";
  out << "  <metadata>{\"title\": \"" << title << "\", \"cells\": [";
  for (std::size_t d = 0; d < qc.cells.size(); ++d) out << (d ? ", " : "") << qc.cells[d].size();
  out << "]}</metadata>\n";
  out << "  <title>" << title << "</title>\n";
  out << "  <g font-family=\"monospace\" font-size=\"9\">\n";

  auto label_text = [&](std::size_t d, std::size_t c, double x, double y, const char* anchor) {
    out << "    <text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor << "\">" << to_string(labels[d][c])
        << "</text>\n";
  };
  if (qc.m == 2) {
    for (std::size_t c = 0; c < qc.cells[2].size(); ++c) {
      const auto& cell = qc.cells[2][c];
      auto verts = closure_vertices(qc.B, qc.a, cell.signature);
      auto [cx, cy] = to_xy(cell.sample_point);
      std::sort(verts.begin(), verts.end(), [&](const RatVector& a, const RatVector& b) {
        auto [ax, ay] = to_xy(a);
        auto [bx, by] = to_xy(b);
        return std::atan2(ay - cy, ax - cx) < std::atan2(by - cy, bx - cx);
      });
      out << "    <polygon class=\"cell-d2\" fill=\"#dde8f5\" stroke=\"none\" points=\"";
      for (const auto& v : verts) {
        auto [x, y] = to_xy(v);
        out << px(x) << "," << py(y) << " ";
      }
      out << "\"/>\n";
      label_text(2, c, px(cx), py(cy), "middle");
    }
  }
  const std::size_t edge_dim = 1;
  for (std::size_t c = 0; c < qc.cells[edge_dim].size(); ++c) {
    const auto& cell = qc.cells[edge_dim][c];
    auto verts = closure_vertices(qc.B, qc.a, cell.signature);
    auto [x1, y1] = to_xy(verts.front());
    auto [x2, y2] = to_xy(verts.back());
    out << "    <line class=\"cell-d1\" stroke=\"#334\" stroke-width=\"1.5\" x1=\"" << px(x1) << "\" y1=\"" << py(y1)
        << "\" x2=\"" << px(x2) << "\" y2=\"" << py(y2) << "\"/>\n";
    auto [mx, my] = to_xy(cell.sample_point);
    label_text(1, c, px(mx), py(my) - 4, "middle");
  }
  for (std::size_t v = 0; v < qc.cells[0].size(); ++v) {
    auto [x, y] = to_xy(qc.vertex_point(v));
    out << "    <circle class=\"cell-d0\" r=\"3.5\" fill=\"#b22\" cx=\"" << px(x) << "\" cy=\"" << py(y) << "\"/>\n";
    label_text(0, v, px(x) + 5, py(y) + 12, "start");
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

std::string macaulay2_script(const GradedFreeComplex& c, const ExactSeq& seq, const std::string& title) {
  const std::size_t n = c.n, r = seq.cl_rank;
  std::ostringstream out;
  out << "-- " << title << "\n";
  out << "-- Variables x_i, y_i carry the classes of D_i in the first and second factor.\n";
  out << "S = QQ[x_1..x_" << n << ", y_1..y_" << n << ", Degrees => {";
  for (std::size_t side = 0; side < 2; ++side) {
    for (std::size_t i = 0; i < n; ++i) {
      out << (side || i ? ", " : "") << "{";
      for (std::size_t k = 0; k < 2 * r; ++k) {
        bool own = side == 0 ? k < r : k >= r;
        out << (k ? "," : "") << (own ? to_string(seq.pi(k % r, i)) : "0");
      }
      out << "}";
    }
  }
  out << "}];\n";
  auto binomials = jl_binomials(c);
  if (!binomials.empty()) {
    out << "JL = ideal(";
    for (std::size_t i = 0; i < binomials.size(); ++i) out << (i ? ", " : "") << m2_poly(binomials[i].polynomial());
    out << ");\n";
  }
  for (std::size_t d = 1; d <= c.top(); ++d) {
    auto pm = to_poly_matrix(c.boundary(d), n);
    out << "d" << d << " = map(S^" << c.boundary(d).rows << ", S^" << c.boundary(d).cols << ", {";
    for (std::size_t i = 0; i < pm.size(); ++i) {
      out << (i ? ", " : "") << "{";
      for (std::size_t k = 0; k < pm[i].size(); ++k) out << (k ? ", " : "") << m2_poly(pm[i][k]);
      out << "}";
    }
    out << "});\n";
  }
  for (std::size_t d = 2; d <= c.top(); ++d) out << "assert(d" << d - 1 << " * d" << d << " == 0);\n";
  if (c.top() >= 1) {
    out << "C = chainComplex {";
    for (std::size_t d = 1; d <= c.top(); ++d) out << (d > 1 ? ", " : "") << "d" << d;
    out << "};\n";
    out << "print prune HH_0 C;\n";
    for (std::size_t d = 1; d <= c.top(); ++d) out << "print(HH_" << d << " C == 0);\n";
  }
  return out.str();
}

}  // namespace diagres
