#include "diagres/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "diagres/linalg.hpp"

namespace diagres {

namespace {

IntVector to_int_vector(const ExponentVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Int(static_cast<long>(v[i]));
  return out;
}

ExponentVector complement_indicator(std::size_t n, const Cone& cone) {
  ExponentVector chi(n, 1);
  for (int r : cone) chi[static_cast<std::size_t>(r)] = 0;
  return chi;
}

std::string vec_string(const ExponentVector& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

// All w in Z^m with lo <= Bw <= hi. B has full column rank, so the set is finite; it is
// enumerated through the m rows whose box of values is smallest.
std::vector<Shift> lattice_points(const IntMatrix& B, const ExponentVector& lo, const ExponentVector& hi) {
  const std::size_t n = B.rows(), m = B.cols();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return {};
  std::vector<std::size_t> best;
  double best_volume = 0;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == m) {
      if (determinant(B.select_rows(pick)) == 0) return;
      double volume = 1;
      for (auto i : pick) volume *= static_cast<double>(hi[i] - lo[i] + 1);
      if (best.empty() || volume < best_volume) best = pick, best_volume = volume;
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  if (best.empty()) throw std::invalid_argument("lattice_points: B is rank deficient");
  RatMatrix sub = to_rat(B.select_rows(best));
  std::vector<Shift> out;
  ExponentVector t(m);
  std::function<void(std::size_t)> walk = [&](std::size_t d) {
    if (d == m) {
      RatVector rhs(m);
      for (std::size_t k = 0; k < m; ++k) rhs[k] = Rat(static_cast<long>(t[k]));
      auto w = solve_linear(sub, rhs);
      if (!w) return;
      Shift s(m);
      for (std::size_t k = 0; k < m; ++k) {
        if (!is_integer((*w)[k])) return;
        s[k] = to_int64((*w)[k].get_num());
      }
      ExponentVector v = lattice_vector(B, s);
      for (std::size_t i = 0; i < n; ++i)
        if (v[i] < lo[i] || v[i] > hi[i]) return;
      out.push_back(std::move(s));
      return;
    }
    for (std::int64_t x = lo[best[d]]; x <= hi[best[d]]; ++x) {
      t[d] = x;
      walk(d + 1);
    }
  };
  walk(0);
  return out;
}

Shift add(const Shift& a, const Shift& b) {
  Shift out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool check_d_squared(const GradedFreeComplex& c) {
  for (std::size_t d = 2; d <= c.top(); ++d) {
    const auto& lower = c.boundary(d - 1);
    const auto& upper = c.boundary(d);
    std::map<std::size_t, std::vector<const BoundaryTerm*>> by_col;
    for (const auto& t : lower.terms) by_col[t.col].push_back(&t);
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> product;
    for (const auto& t2 : upper.terms) {
      auto it = by_col.find(t2.row);
      if (it == by_col.end()) continue;
      for (const auto* t1 : it->second) {
        auto [entry, inserted] = product.try_emplace({t1->row, t2.col}, Polynomial(c.n));
        entry->second.add_term(t1->monomial * t2.monomial, t1->sign * t2.sign);
      }
    }
    for (const auto& [pos, p] : product)
      if (!p.is_zero()) return false;
  }
  return true;
}

bool check_homogeneity(const GradedFreeComplex& c, const ExactSeq& seq) {
  for (std::size_t d = 1; d <= c.top(); ++d)
    for (const auto& t : c.boundary(d).terms)
      if (degree_of(t.monomial, seq) + c.generators[d - 1][t.row].degree != c.generators[d][t.col].degree) return false;
  return true;
}

bool check_divisibility(const GradedFreeComplex& c) {
  for (const auto& bm : c.boundaries)
    for (const auto& t : bm.terms)
      if (!t.monomial.is_polynomial()) return false;
  return true;
}

bool AcyclicityReport::acyclic() const {
  return std::all_of(reduced_homology.begin(), reduced_homology.end(), [](std::size_t r) { return r == 0; });
}

AcyclicityReport subcomplex_acyclicity(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                                       const LaurentMonomial& bound) {
  AcyclicityReport report;
  report.bound = bound;
  const std::size_t top = qc.cells.size();
  // Included translates per dimension, keyed by (cell, shift).
  std::vector<std::map<std::pair<std::size_t, Shift>, std::size_t>> index(top);
  for (std::size_t d = 0; d < top; ++d) {
    for (std::size_t c = 0; c < qc.cells[d].size(); ++c) {
      const auto& mon = labels[d][c];
      ExponentVector lo(qc.n), hi(qc.n);
      for (std::size_t i = 0; i < qc.n; ++i) {
        hi[i] = bound.x[i] - mon.x[i];
        lo[i] = mon.y[i] - bound.y[i];
      }
      for (auto& w : lattice_points(qc.B, lo, hi)) index[d].emplace(std::make_pair(c, w), 0);
    }
    std::size_t k = 0;
    for (auto& [key, id] : index[d]) id = k++;
    report.cells_per_dim.push_back(index[d].size());
  }
  report.empty = index[0].empty();

  std::vector<std::size_t> ranks(top + 1, 0);  // ranks[d] = rank of d_d, ranks[0] = augmentation
  ranks[0] = report.empty ? 0 : 1;
  for (std::size_t d = 1; d < top; ++d) {
    RatMatrix M(index[d - 1].size(), index[d].size());
    for (const auto& [key, col] : index[d]) {
      const auto& [c, w] = key;
      for (const auto& ref : qc.cells[d][c].faces) {
        auto it = index[d - 1].find({ref.cell, add(w, ref.shift)});
        if (it == index[d - 1].end()) throw std::logic_error("subcomplex_acyclicity: truncation is not closed under faces");
        M(it->second, col) += ref.sign;
      }
    }
    ranks[d] = M.rows() && M.cols() ? rank(M) : 0;
  }
  report.reduced_homology.push_back(1 - ranks[0]);  // H_{-1}
  for (std::size_t d = 0; d < top; ++d) {
    std::size_t next = d + 1 < top ? ranks[d + 1] : 0;
    report.reduced_homology.push_back(report.cells_per_dim[d] - ranks[d] - next);
  }
  return report;
}

std::vector<std::size_t> quotient_betti_numbers(const QuotientComplex& qc) {
  const std::size_t top = qc.cells.size();
  std::vector<std::size_t> ranks(top + 1, 0);
  for (std::size_t d = 1; d < top; ++d) {
    RatMatrix M(qc.cells[d - 1].size(), qc.cells[d].size());
    for (std::size_t c = 0; c < qc.cells[d].size(); ++c)
      for (const auto& ref : qc.cells[d][c].faces) M(ref.cell, c) += ref.sign;
    ranks[d] = rank(M);
  }
  std::vector<std::size_t> betti;
  for (std::size_t d = 0; d < top; ++d) betti.push_back(qc.cells[d].size() - ranks[d] - ranks[d + 1]);
  return betti;
}

TorsionCertificate torsion_certificate(const ExactSeq& seq, const ExponentVector& f, const Cone& sigma1,
                                       const Cone& sigma2, std::int64_t bound) {
  const std::size_t n = seq.n(), m = seq.m();
  const IntMatrix& B = seq.B;
  auto in = [](const Cone& c, std::size_t i) { return std::find(c.begin(), c.end(), static_cast<int>(i)) != c.end(); };

  // Step 1: u1 in L agreeing with f on the rays of sigma1 (a Z-basis, since the fan is smooth).
  std::vector<std::size_t> rows(sigma1.begin(), sigma1.end());
  RatVector rhs;
  for (auto i : rows) rhs.push_back(Rat(static_cast<long>(f[i])));
  auto w1 = solve_linear(to_rat(B.select_rows(rows)), rhs);
  if (!w1 || rank(to_rat(B.select_rows(rows))) != m) throw CertificateError("torsion_certificate: cone is not full-dimensional");
  Shift s1(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!is_integer((*w1)[k])) throw CertificateError("torsion_certificate: cone is not smooth");
    s1[k] = to_int64((*w1)[k].get_num());
  }
  ExponentVector u1 = lattice_vector(B, s1);

  // Step 2: a separating element d of L.
  std::vector<LinearConstraint> cons;
  for (std::size_t i = 0; i < n; ++i) {
    bool a = in(sigma1, i), b = in(sigma2, i);
    if (!a && !b) continue;
    RatVector row(m);
    for (std::size_t k = 0; k < m; ++k) row[k] = Rat(B(i, k));
    if (a && b) cons.push_back(equal(row, 0));
    else if (a) cons.push_back(less(row, 0));
    else cons.push_back(greater(row, 0));
  }
  auto wsep = feasible_point(cons, m);
  if (!wsep) throw CertificateError("torsion_certificate: cones cannot be separated");
  Int scale = 1;
  for (const auto& v : *wsep) scale = lcm(scale, Int(v.get_den()));
  Shift s2(m);
  for (std::size_t k = 0; k < m; ++k) s2[k] = to_int64(Int((*wsep)[k] * Rat(scale)));
  ExponentVector dir = lattice_vector(B, s2);

  // Step 3: smallest k (then smallest ell) making every exponent nonnegative.
  ExponentVector chi1 = complement_indicator(n, sigma1), chi2 = complement_indicator(n, sigma2);
  std::int64_t max_exp = 1;
  for (auto e : f) max_exp = std::max<std::int64_t>(max_exp, e < 0 ? -e : e);
  std::optional<TorsionCertificate> best;
  for (std::int64_t ell = 0; ell <= bound; ++ell) {
    ExponentVector u(n);
    std::int64_t k = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      u[i] = u1[i] + ell * dir[i];
      std::int64_t over = u[i] - f[i];  // must be <= k * chi1
      std::int64_t under = f[i] - u[i];  // must be <= k * chi2
      if (over > 0) {
        if (!chi1[i]) ok = false;
        else k = std::max(k, over);
      }
      if (under > 0) {
        if (!chi2[i]) ok = false;
        else k = std::max(k, under);
      }
      if (std::abs(u[i]) > bound * max_exp) ok = false;
    }
    if (!ok || k > bound) continue;
    if (best && (best->k < k || (best->k == k && best->ell <= ell))) continue;
    TorsionCertificate cert;
    cert.sigma1 = sigma1;
    cert.sigma2 = sigma2;
    cert.k = k;
    cert.ell = ell;
    cert.floor = f;
    cert.u = u;
    cert.alpha.resize(n);
    cert.beta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cert.alpha[i] = k * chi1[i] + f[i] - u[i];
      cert.beta[i] = k * chi2[i] - f[i] + u[i];
    }
    best = cert;
  }
  if (!best) {
    std::ostringstream msg;
    msg << "torsion_certificate: no certificate with k, ell <= " << bound << " for floor " << vec_string(f);
    throw CertificateError(msg.str());
  }
  return *best;
}

bool verify_certificate(const ExactSeq& seq, const TorsionCertificate& cert) {
  const std::size_t n = seq.n();
  if (cert.u.size() != n || cert.alpha.size() != n || cert.beta.size() != n || cert.floor.size() != n) return false;
  if (cert.k < 0 || !seq.in_lattice(to_int_vector(cert.u))) return false;
  ExponentVector chi1 = complement_indicator(n, cert.sigma1), chi2 = complement_indicator(n, cert.sigma2);
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.alpha[i] < 0 || cert.beta[i] < 0) return false;
    // x side: k chi1 + f = alpha + u;  y side: k chi2 - f = beta - u.
    if (cert.k * chi1[i] + cert.floor[i] != cert.alpha[i] + cert.u[i]) return false;
    if (cert.k * chi2[i] - cert.floor[i] != cert.beta[i] - cert.u[i]) return false;
  }
  return true;
}

std::optional<LatticeWitness> lattice_witness(const ExactSeq& seq, const ExponentVector& f, const ExponentVector& a,
                                              const ExponentVector& b) {
  const std::size_t n = seq.n();
  ExponentVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = f[i] - b[i];
    hi[i] = f[i] + a[i];
  }
  auto points = lattice_points(seq.B, lo, hi);
  if (points.empty()) return std::nullopt;
  LatticeWitness w;
  w.u = lattice_vector(seq.B, points.front());
  w.alpha.resize(n);
  w.beta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.alpha[i] = a[i] + f[i] - w.u[i];
    w.beta[i] = b[i] - f[i] + w.u[i];
  }
  return w;
}

CokernelReport full_cokernel_check(const QuotientComplex& qc, const ExactSeq& seq, const std::vector<Cone>& cones) {
  CokernelReport report;
  for (std::size_t v = 0; v < qc.cells[0].size(); ++v) {
    LaurentMonomial label = vertex_label(qc.vertex_ambient(v));
    for (const auto& s1 : cones) {
      for (const auto& s2 : cones) {
        try {
          auto cert = torsion_certificate(seq, label.x, s1, s2);
          cert.vertex = v;
          if (!verify_certificate(seq, cert)) {
            report.passed = false;
            report.failures.push_back("certificate for vertex " + std::to_string(v) + " does not re-verify");
          }
          report.certificates.push_back(std::move(cert));
        } catch (const CertificateError& e) {
          report.passed = false;
          report.failures.push_back("vertex " + std::to_string(v) + ": " + e.what());
        }
      }
    }
  }
  return report;
}

bool unimodularity_cross_check(const QuotientComplex& qc, const FanClassification& fc) {
  bool integral = true;
  for (std::size_t v = 0; v < qc.cells[0].size(); ++v)
    for (const auto& x : qc.vertex_ambient(v)) integral = integral && is_integer(x);
  return fc.unimodular == integral;
}

std::vector<LaurentMonomial> sample_degrees(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                                            std::size_t random_count, std::uint64_t seed) {
  std::set<LaurentMonomial> base;
  for (const auto& level : labels) base.insert(level.begin(), level.end());
  std::vector<LaurentMonomial> flat(base.begin(), base.end());
  std::set<LaurentMonomial> out(base);
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = i + 1; j < flat.size(); ++j) out.insert(lcm(flat[i], flat[j]));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
  std::uniform_int_distribution<int> step(-1, 1), bump(0, 2);
  std::vector<LaurentMonomial> result(out.begin(), out.end());
  for (std::size_t r = 0; r < random_count; ++r) {
    Shift w(qc.m);
    for (auto& x : w) x = step(rng);
    LaurentMonomial mon = lcm(flat[pick(rng)], translate_label_unchecked(flat[pick(rng)], lattice_vector(qc.B, w)));
    for (std::size_t i = 0; i < mon.n(); ++i) {
      mon.x[i] += bump(rng);
      mon.y[i] += bump(rng);
    }
    result.push_back(mon);
  }
  return result;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : cokernel.certificates) {
    j["certificates"].push_back({{"vertex", c.vertex},
                                 {"sigma1", c.sigma1},
                                 {"sigma2", c.sigma2},
                                 {"k", c.k},
                                 {"ell", c.ell},
                                 {"floor", c.floor},
                                 {"u", c.u},
                                 {"alpha", c.alpha},
                                 {"beta", c.beta}});
  }
  j["certificate_failures"] = cokernel.failures;
  return j;
}

VerificationReport run_battery(const Fan& fan, const ExactSeq& seq, const QuotientComplex& qc,
                               const GradedFreeComplex& complex, const std::vector<Cone>& cones,
                               const BatteryOptions& options) {
  VerificationReport report;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("d_squared", check_d_squared(complex));
  add("homogeneity", check_homogeneity(complex, seq));
  add("divisibility", check_divisibility(complex));
  add("euler_characteristic", qc.euler_characteristic() == 0, "chi = " + std::to_string(qc.euler_characteristic()));

  auto betti = quotient_betti_numbers(qc);
  bool torus = true;
  std::ostringstream betti_text;
  for (std::size_t d = 0; d < betti.size(); ++d) {
    torus = torus && betti[d] == binomial(qc.m, d);
    betti_text << (d ? "," : "") << betti[d];
  }
  add("torus_homology", torus, "betti = (" + betti_text.str() + ")");

  bool samples_ok = true, closure_ok = true;
  for (std::size_t d = 0; d < qc.cells.size(); ++d) {
    for (const auto& cell : qc.cells[d]) {
      samples_ok = samples_ok && satisfies_signature(qc.B, qc.a, cell.signature, cell.sample_point);
      for (const auto& ref : cell.faces) {
        Signature face = shift_signature(qc.B, qc.cells[d - 1][ref.cell].signature, ref.shift);
        for (std::size_t i = 0; i < qc.n; ++i) {
          const auto& c = cell.signature[i];
          const auto& f = face[i];
          bool ok = c.at ? (f.at && f.j == c.j) : (f == c || (f.at && (f.j == c.j || f.j == c.j + 1)));
          closure_ok = closure_ok && ok;
        }
      }
    }
  }
  add("sample_points", samples_ok);
  add("closure_relation", closure_ok);

  // Floor labels commute with translation by L.
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7), shift(-3, 3);
  bool floors_ok = true;
  for (std::size_t s = 0; s < options.translation_samples; ++s) {
    RatVector p(qc.n);
    for (auto& x : p) x = make_rat(Int(num(rng)), Int(den(rng)));
    Shift w(qc.m);
    for (auto& x : w) x = shift(rng);
    ExponentVector v = lattice_vector(qc.B, w);
    RatVector pv = p;
    for (std::size_t i = 0; i < qc.n; ++i) pv[i] += Rat(static_cast<long>(v[i]));
    floors_ok = floors_ok && vertex_label(pv) == translate_label(vertex_label(p), v, seq);
  }
  add("floor_translation", floors_ok, std::to_string(options.translation_samples) + " samples");

  if (options.unimodularity) {
    FanClassification fc = validate_fan(fan);
    add("unimodularity_vs_integral_vertices", unimodularity_cross_check(qc, fc),
        std::string("unimodular = ") + (fc.unimodular ? "true" : "false"));
  }

  auto labels = cell_labels(qc);
  std::size_t nonempty = 0, empty = 0, failing = 0;
  std::string first_failure;
  for (const auto& b : sample_degrees(qc, labels, options.random_degrees, options.seed)) {
    auto r = subcomplex_acyclicity(qc, labels, b);
    if (r.empty) {
      ++empty;
      continue;
    }
    ++nonempty;
    if (!r.acyclic()) {
      if (failing++ == 0) first_failure = to_string(b);
    }
  }
  std::ostringstream acyc;
  acyc << nonempty << " nonempty degrees, " << empty << " empty excluded";
  if (failing) acyc << ", " << failing << " not acyclic (first " << first_failure << ")";
  add("acyclicity", failing == 0 && nonempty > 0, acyc.str());

  bool binomials_ok = true;
  for (const auto& b : jl_binomials(complex)) binomials_ok = binomials_ok && seq.in_lattice(to_int_vector(b.difference()));
  add("binomials_in_lattice", binomials_ok);

  report.cokernel = full_cokernel_check(qc, seq, cones);
  std::ostringstream cert;
  cert << report.cokernel.certificates.size() << " certificates";
  if (!report.cokernel.failures.empty()) cert << "; " << report.cokernel.failures.front();
  add("torsion_certificates", report.cokernel.passed, cert.str());
  return report;
}

}  // namespace diagres
