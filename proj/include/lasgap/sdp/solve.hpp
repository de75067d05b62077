#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lasgap/sdp/problem.hpp"

namespace lasgap::sdp {

enum class SolveStatus { converged, max_iter, infeasible_suspected };

std::string status_to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-7;
  int max_iter = 200000;
  double sigma = 0.0;        // 0 = scale-based automatic choice
  double over_relax = 1.0;   // in [1, 2)
  int adapt_every = 100;     // sigma rebalancing cadence, 0 disables
};

struct SdpSolution {
  // One entry per block: dense blocks fill dense_blocks, diagonal blocks fill
  // diag_blocks; the other slot stays empty.
  std::vector<Eigen::MatrixXd> dense_blocks;
  std::vector<Eigen::VectorXd> diag_blocks;
  Eigen::VectorXd dual;  // multiplier per constraint

  double objective = 0.0;         // in the problem's own sense
  double primal_residual = 0.0;   // max |<A_k, X> - b_k|, recomputed from X
  double dual_residual = 0.0;     // final successive-iterate change
  std::vector<double> min_eigenvalues;
  int iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
  double tol_used = 0.0;
  double sigma_final = 0.0;

  double entry(int block, int i, int j) const;
};

SdpSolution solve(const SdpProblem& p, double tol, int max_iter);
SdpSolution solve(const SdpProblem& p, const SolveOptions& options = {});

// Frobenius-nearest PSD matrix (eigenvalue clipping). Throws on non-symmetric input.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a);

}  // namespace lasgap::sdp
