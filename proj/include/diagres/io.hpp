#pragma once

// Fan JSON input and the text renderings used by the command-line tool.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagres/arrangement.hpp"
#include "diagres/complex.hpp"
#include "diagres/fan.hpp"

namespace diagres {

/// Malformed input (wrong JSON types, missing fields, bad lengths).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FanInput {
  Fan fan;
  std::optional<std::vector<std::string>> epsilon;  // rational strings
  std::optional<std::vector<IntVector>> basis;
  std::vector<int> removed_rays;
};

/// {"m", "rays", "max_cones", optional "cl_basis", "epsilon", "removed_rays"}; indices are 0-based.
FanInput parse_fan_json(const nlohmann::json& j);

/// "1/10,0,0,1/10"
std::vector<std::string> parse_epsilon_list(const std::string& text);
/// "0,1,0,0;0,0,1,0"
std::vector<IntVector> parse_basis_list(const std::string& text);
/// "1,3"
std::vector<int> parse_index_list(const std::string& text);

/// Deformation of the right length; throws SchemaError otherwise.
Deformation make_deformation(const std::optional<std::vector<std::string>>& epsilon, std::size_t n);

nlohmann::json classification_json(const Fan& fan, const FanClassification& fc, const ExactSeq& seq);

/// Plain-text table of generators (label and degree per cell) followed by the boundary maps.
std::string complex_table(const GradedFreeComplex& c);

/// Static SVG of a rank-1 or rank-2 quotient complex: one representative of every cell with
/// its label. Cell counts go into the <metadata> block.
std::string quotient_svg(const QuotientComplex& qc, const std::vector<std::vector<LaurentMonomial>>& labels,
                         const std::string& title);

/// Macaulay2 script defining the graded ring, J_L and the boundary maps, with checks of
/// d^2 = 0 and of the homology of the complex.
std::string macaulay2_script(const GradedFreeComplex& c, const ExactSeq& seq, const std::string& title);

}  // namespace diagres
