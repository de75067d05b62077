#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lasgap/poly.hpp"

namespace lasgap::sdp {

struct BlockSpec {
  int size = 0;
  bool diagonal = false;

  bool operator==(const BlockSpec&) const = default;
};

// One entry of a symmetric coefficient matrix, SDPA convention: the value sits
// at both (i, j) and (j, i), and <A, X> sums over the full matrix, so an
// off-diagonal coefficient c contributes 2 c X_ij.
struct SdpTerm {
  int block = 0;  // 0-based
  int i = 0;      // 0-based, i <= j
  int j = 0;
  double coeff = 0.0;
};

struct SdpRow {
  std::vector<SdpTerm> terms;
  double rhs = 0.0;
  std::string label;
};

// min/max <C, X> subject to <A_k, X> = b_k, X block-diagonal PSD.
struct SdpProblem {
  std::vector<BlockSpec> blocks;
  std::vector<SdpRow> constraints;
  std::vector<SdpTerm> objective;
  lasgap::Sense sense = lasgap::Sense::minimize;

  // Optional introspection: name per tracked scalar variable and its position.
  std::vector<std::string> variable_names;
  std::vector<SdpTerm> variable_positions;  // coeff unused

  size_t num_constraints() const { return constraints.size(); }
  void validate() const;  // throws on malformed terms or empty constraints

  // Minimization form with sorted, merged, zero-free term lists and no naming
  // metadata. Two problems are the same instance iff canonical() outputs match.
  SdpProblem canonical() const;
};

bool canonical_equal(const SdpProblem& a, const SdpProblem& b, double tol = 0.0);

nlohmann::json sdp_to_json(const SdpProblem& p);
SdpProblem sdp_from_json(const nlohmann::json& j);

}  // namespace lasgap::sdp
