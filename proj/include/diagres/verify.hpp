#pragma once

// Correctness battery: d^2 = 0, homogeneity, label divisibility, acyclicity of the degree
// truncations X_{<=b}, unimodularity versus integral vertices, and torsion certificates for
// the cokernel modulo the irrelevant ideal.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagres/arrangement.hpp"
#include "diagres/complex.hpp"
#include "diagres/fan.hpp"
#include "diagres/monomial.hpp"

namespace diagres {

/// True iff d_{d} * d_{d+1} vanishes symbolically for every d.
bool check_d_squared(const GradedFreeComplex& c);

/// Every term satisfies degree(term) + degree(row) = degree(column).
bool check_homogeneity(const GradedFreeComplex& c, const ExactSeq& seq);

/// Every term is a genuine monomial (face labels divide cell labels).
bool check_divisibility(const GradedFreeComplex& c);

struct AcyclicityReport {
  LaurentMonomial bound;
  std::vector<std::size_t> cells_per_dim;       // translates of cells included
  std::vector<std::size_t> reduced_homology;    // index d+1 holds reduced H_d; index 0 is H_{-1}
  bool empty = false;
  bool acyclic() const;
};

/// Reduced rational homology of the subcomplex of the periodic arrangement made of all
/// L-translates of cells whose labels divide x^b y^b' (the bound is a Laurent monomial).
AcyclicityReport subcomplex_acyclicity(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                                       const LaurentMonomial& bound);

/// Rational Betti numbers of the quotient complex itself (the torus when the fan is complete).
std::vector<std::size_t> quotient_betti_numbers(const QuotientComplex& qc);

struct TorsionCertificate {
  std::size_t vertex = 0;
  Cone sigma1, sigma2;  // indices into the cone list used
  std::int64_t k = 0;
  std::int64_t ell = 0;
  ExponentVector floor;  // exponents f of m_p = x^f / y^f
  ExponentVector u;      // element of L
  ExponentVector alpha, beta;
};

/// Raised when no certificate exists within the search bound.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constructive witness of (x^{s1^} y^{s2^})^k m_p = x^alpha y^beta m_u with u in L.
/// The complements s1^, s2^ are taken in the full ray set, so removed rays are included.
/// u = u1 + ell * d where u1 agrees with floor(p) on the rays of sigma1 and d is a separating
/// element of L (zero on the common rays, negative on sigma1 only, positive on sigma2 only).
TorsionCertificate torsion_certificate(const ExactSeq& seq, const ExponentVector& floor_exponents, const Cone& sigma1,
                                       const Cone& sigma2, std::int64_t bound = 64);

/// Independent re-check of the identity by exponent arithmetic.
bool verify_certificate(const ExactSeq& seq, const TorsionCertificate& cert);

/// Witness for a fixed multiplier x^a y^b: some u in L with a + f - u >= 0 and b - f + u >= 0.
struct LatticeWitness {
  ExponentVector u, alpha, beta;
};
std::optional<LatticeWitness> lattice_witness(const ExactSeq& seq, const ExponentVector& floor_exponents,
                                              const ExponentVector& x_mult, const ExponentVector& y_mult);

struct CokernelReport {
  bool passed = true;
  std::vector<TorsionCertificate> certificates;
  std::vector<std::string> failures;
};

/// Certificates for every vertex class and every ordered pair of cones in `cones`.
CokernelReport full_cokernel_check(const QuotientComplex& qc, const ExactSeq& seq, const std::vector<Cone>& cones);

/// fc.unimodular iff every vertex class has integral ambient coordinates (meaningful at eps = 0).
bool unimodularity_cross_check(const QuotientComplex& qc, const FanClassification& fc);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BatteryOptions {
  std::uint64_t seed = 1;
  std::size_t random_degrees = 50;
  std::size_t translation_samples = 100;
  bool unimodularity = true;  // only meaningful for undeformed runs
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  CokernelReport cokernel;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// The whole battery on one run. `cones` is the cone list for the certificates.
VerificationReport run_battery(const Fan& fan, const ExactSeq& seq, const QuotientComplex& qc,
                               const GradedFreeComplex& complex, const std::vector<Cone>& cones,
                               const BatteryOptions& options = {});

/// Degrees sampled for the acyclicity check: all cell labels, their pairwise joins, and
/// `random_count` random enlargements of translated labels.
std::vector<LaurentMonomial> sample_degrees(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                                            std::size_t random_count, std::uint64_t seed);

}  // namespace diagres
