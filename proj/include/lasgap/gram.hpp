#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lasgap/moments.hpp"
#include "lasgap/poly.hpp"
#include "lasgap/subset.hpp"

namespace lasgap {

// Vectors U_S realizing a moment matrix as a Gram matrix: <U_S, U_T> = y_{S union T}.
struct GramSolution {
  std::vector<SubsetKey> basis;  // (size, lex) order
  Eigen::MatrixXd vectors;       // one column per basis element

  int index_of(const SubsetKey& k) const;  // -1 when absent
  Eigen::VectorXd vec(const SubsetKey& k) const;
  double inner(const SubsetKey& a, const SubsetKey& b) const;
};

// Symmetric eigendecomposition factoring; eigenvalues in [-tol, 0) are clipped
// to 0, anything below -tol rejects the input.
GramSolution gram_from_moments(const MomentVector& y, uint32_t level, double tol);
GramSolution gram_from_matrix(std::vector<SubsetKey> basis, const Eigen::MatrixXd& gram,
                              double tol);

struct VectorViolation {
  SubsetKey a;
  SubsetKey b;
  double amount = 0.0;
  std::string kind;  // "union" or "negative"
};

struct VectorReport {
  std::vector<VectorViolation> violations;  // capped; see total_violations
  size_t total_violations = 0;
  double empty_norm_deviation = 0.0;  // | ||U_empty||^2 - 1 |, 0 if empty absent
  double max_violation = 0.0;
  size_t checked_pairs = 0;

  bool clean() const { return total_violations == 0 && max_violation == 0.0; }
};

// Checks union-consistency (<U_A, U_B> vs ||U_{A union B}||^2 where the union
// is in the basis), inner-product nonnegativity, and the empty-set norm.
VectorReport verify_vector_constraints(const GramSolution& g, double tol);

struct LiftCertificate {
  double delta = 0.0;
  double residual = 0.0;
  bool accepted = false;
};

// Checks sum_S q(S) U_S = delta * U_empty with delta = <sum, U_empty>.
LiftCertificate certify_lift(const GramSolution& g, const MultilinearPoly& q, double tol);

}  // namespace lasgap
