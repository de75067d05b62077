#include "lasgap/sdp/solve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace lasgap::sdp {

std::string status_to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible_suspected: return "infeasible_suspected";
  }
  return "unknown";
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Packed symmetric layout: dense blocks store the upper triangle column-major
// with off-diagonal entries scaled by sqrt(2), so the Euclidean inner product
// of packed vectors equals the matrix inner product. Diagonal blocks store
// only their diagonal.
struct Layout {
  std::vector<int> offset;
  std::vector<int> size;
  std::vector<bool> diagonal;
  int total = 0;

  explicit Layout(const std::vector<BlockSpec>& blocks) {
    offset.reserve(blocks.size());
    for (const auto& b : blocks) {
      offset.push_back(total);
      size.push_back(b.size);
      diagonal.push_back(b.diagonal);
      total += b.diagonal ? b.size : b.size * (b.size + 1) / 2;
    }
  }

  int index(int b, int i, int j) const {
    if (diagonal[static_cast<size_t>(b)]) return offset[static_cast<size_t>(b)] + i;
    return offset[static_cast<size_t>(b)] + j * (j + 1) / 2 + i;
  }
};

double packed_coeff(const SdpTerm& t) {
  return t.i == t.j ? t.coeff : kSqrt2 * t.coeff;
}

void check_finite(const Eigen::VectorXd& v, const char* what, int iteration) {
  if (!v.allFinite()) {
    throw std::runtime_error(std::string("sdp solve: NaN/Inf detected in ") + what +
                             " at iteration " + std::to_string(iteration));
  }
}

}  // namespace

double SdpSolution::entry(int block, int i, int j) const {
  const auto b = static_cast<size_t>(block);
  if (b < diag_blocks.size() && diag_blocks[b].size() > 0) {
    return i == j ? diag_blocks[b](i) : 0.0;
  }
  return dense_blocks[b](i, j);
}

SdpSolution solve(const SdpProblem& p, double tol, int max_iter) {
  SolveOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve(p, opt);
}

SdpSolution solve(const SdpProblem& problem, const SolveOptions& options) {
  if (options.tol <= 0) throw std::invalid_argument("sdp solve: tol must be positive");
  problem.validate();

  const Layout layout(problem.blocks);
  const int n = layout.total;
  const auto m = static_cast<int>(problem.constraints.size());
  const int num_blocks = static_cast<int>(problem.blocks.size());
  const double flip = problem.sense == lasgap::Sense::maximize ? -1.0 : 1.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (const auto& t : problem.objective) {
    c(layout.index(t.block, t.i, t.j)) += flip * packed_coeff(t);
  }

  Eigen::VectorXd b(m);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < m; ++k) {
    const SdpRow& row = problem.constraints[static_cast<size_t>(k)];
    b(k) = row.rhs;
    for (const auto& t : row.terms) {
      triplets.emplace_back(k, layout.index(t.block, t.i, t.j), packed_coeff(t));
    }
  }
  Eigen::SparseMatrix<double> A(m, n);
  A.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseMatrix<double> At = A.transpose();

  Eigen::SparseMatrix<double> AAt = (A * At).pruned();
  double max_diag = 0.0;
  for (int k = 0; k < m; ++k) max_diag = std::max(max_diag, AAt.coeff(k, k));
  if (max_diag == 0.0) max_diag = 1.0;
  {
    Eigen::SparseMatrix<double> reg(m, m);
    reg.setIdentity();
    AAt = AAt + Eigen::SparseMatrix<double>((1e-12 * max_diag) * reg);
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(AAt);
  if (chol.info() != Eigen::Success) {
    throw std::runtime_error("sdp solve: Cholesky factorization of AA^T failed");
  }

  double sigma = options.sigma;
  if (sigma <= 0) sigma = (b.norm() + 1.0) / (c.norm() + 1.0);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);      // relaxed state
  Eigen::VectorXd x_psd = Eigen::VectorXd::Zero(n);  // PSD iterate, what we return
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd w(n), x_new(n);

  SolveStatus status = SolveStatus::max_iter;
  double primal_res = std::numeric_limits<double>::infinity();
  double dual_res = std::numeric_limits<double>::infinity();
  int iterations = 0;

  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> eigs(
      static_cast<size_t>(num_blocks));

  for (int it = 1; it <= options.max_iter; ++it) {
    iterations = it;

    Eigen::VectorXd rhs = A * (c - z) + (b - A * x) / sigma;
    y = chol.solve(rhs);
    check_finite(y, "dual iterate", it);

    w = c - At * y - x / sigma;

    for (int bi = 0; bi < num_blocks; ++bi) {
      const int s = layout.size[static_cast<size_t>(bi)];
      const int off = layout.offset[static_cast<size_t>(bi)];
      if (layout.diagonal[static_cast<size_t>(bi)]) {
        for (int i = 0; i < s; ++i) {
          const double wi = w(off + i);
          z(off + i) = std::max(wi, 0.0);
          x_new(off + i) = sigma * std::max(-wi, 0.0);
        }
        continue;
      }
      Eigen::MatrixXd wm(s, s);
      for (int j = 0; j < s; ++j) {
        for (int i = 0; i <= j; ++i) {
          const double v = w(off + j * (j + 1) / 2 + i);
          const double entry = (i == j) ? v : v / kSqrt2;
          wm(i, j) = entry;
          wm(j, i) = entry;
        }
      }
      auto& eig = eigs[static_cast<size_t>(bi)];
      eig.compute(wm);
      if (eig.info() != Eigen::Success) {
        throw std::runtime_error("sdp solve: eigendecomposition failed at iteration " +
                                 std::to_string(it));
      }
      Eigen::VectorXd pos = eig.eigenvalues().cwiseMax(0.0);
      Eigen::MatrixXd wpos =
          eig.eigenvectors() * pos.asDiagonal() * eig.eigenvectors().transpose();
      for (int j = 0; j < s; ++j) {
        for (int i = 0; i <= j; ++i) {
          const double scale = (i == j) ? 1.0 : kSqrt2;
          const int idx = off + j * (j + 1) / 2 + i;
          const double zp = scale * wpos(i, j);
          z(idx) = zp;
          x_new(idx) = sigma * (zp - scale * wm(i, j));
        }
      }
    }
    check_finite(x_new, "primal iterate", it);

    dual_res = (x_new - x_psd).lpNorm<Eigen::Infinity>() / sigma;
    x_psd = x_new;
    primal_res = (A * x_psd - b).lpNorm<Eigen::Infinity>();

    if (primal_res <= options.tol && dual_res <= options.tol) {
      status = SolveStatus::converged;
      x = x_psd;
      break;
    }

    if (options.over_relax != 1.0) {
      x = x + options.over_relax * (x_new - x);
    } else {
      x = x_new;
    }

    if (y.lpNorm<Eigen::Infinity>() > 1e12) {
      status = SolveStatus::infeasible_suspected;
      break;
    }

    if (options.adapt_every > 0 && it % options.adapt_every == 0) {
      if (primal_res > 10.0 * dual_res) {
        sigma = std::max(sigma / 1.5, 1e-8);
      } else if (dual_res > 10.0 * primal_res) {
        sigma = std::min(sigma * 1.5, 1e8);
      }
    }
  }

  if (status == SolveStatus::max_iter &&
      primal_res > std::max(1e-3, 1e4 * options.tol) * (1.0 + b.lpNorm<Eigen::Infinity>())) {
    status = SolveStatus::infeasible_suspected;
  }

  SdpSolution sol;
  sol.dense_blocks.resize(static_cast<size_t>(num_blocks));
  sol.diag_blocks.resize(static_cast<size_t>(num_blocks));
  sol.min_eigenvalues.resize(static_cast<size_t>(num_blocks), 0.0);
  for (int bi = 0; bi < num_blocks; ++bi) {
    const int s = layout.size[static_cast<size_t>(bi)];
    const int off = layout.offset[static_cast<size_t>(bi)];
    if (layout.diagonal[static_cast<size_t>(bi)]) {
      Eigen::VectorXd d(s);
      for (int i = 0; i < s; ++i) d(i) = x_psd(off + i);
      sol.min_eigenvalues[static_cast<size_t>(bi)] = s > 0 ? d.minCoeff() : 0.0;
      sol.diag_blocks[static_cast<size_t>(bi)] = std::move(d);
      continue;
    }
    Eigen::MatrixXd xm(s, s);
    for (int j = 0; j < s; ++j) {
      for (int i = 0; i <= j; ++i) {
        const double v = x_psd(off + j * (j + 1) / 2 + i);
        const double entry = (i == j) ? v : v / kSqrt2;
        xm(i, j) = entry;
        xm(j, i) = entry;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(xm);
    sol.min_eigenvalues[static_cast<size_t>(bi)] =
        s > 0 ? eig.eigenvalues().minCoeff() : 0.0;
    sol.dense_blocks[static_cast<size_t>(bi)] = std::move(xm);
  }

  double max_violation = 0.0;
  for (const auto& row : problem.constraints) {
    double val = 0.0;
    for (const auto& t : row.terms) {
      const double xe = sol.entry(t.block, t.i, t.j);
      val += t.coeff * (t.i == t.j ? xe : 2.0 * xe);
    }
    max_violation = std::max(max_violation, std::abs(val - row.rhs));
  }

  double obj = 0.0;
  for (const auto& t : problem.objective) {
    const double xe = sol.entry(t.block, t.i, t.j);
    obj += t.coeff * (t.i == t.j ? xe : 2.0 * xe);
  }

  sol.dual = y;
  sol.objective = obj;
  sol.primal_residual = max_violation;
  sol.dual_residual = dual_res;
  sol.iterations = iterations;
  sol.status = status;
  sol.tol_used = options.tol;
  sol.sigma_final = sigma;
  return sol;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("psd_project: matrix not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("psd_project: matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("psd_project: eigendecomposition failed");
  }
  Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace lasgap::sdp
