#include "lasgap/gram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lasgap {

int GramSolution::index_of(const SubsetKey& k) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), k);
  if (it == basis.end() || !(*it == k)) return -1;
  return static_cast<int>(it - basis.begin());
}

Eigen::VectorXd GramSolution::vec(const SubsetKey& k) const {
  int idx = index_of(k);
  if (idx < 0) throw std::out_of_range("GramSolution: no vector for " + k.to_string());
  return vectors.col(idx);
}

double GramSolution::inner(const SubsetKey& a, const SubsetKey& b) const {
  return vec(a).dot(vec(b));
}

GramSolution gram_from_matrix(std::vector<SubsetKey> basis, const Eigen::MatrixXd& gram,
                              double tol) {
  if (gram.rows() != gram.cols() ||
      static_cast<size_t>(gram.rows()) != basis.size()) {
    throw std::invalid_argument("gram_from_matrix: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("gram_from_matrix: eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = eig.eigenvalues();
  if (evals.size() > 0 && evals.minCoeff() < -tol) {
    throw std::invalid_argument("gram_from_matrix: matrix not PSD within tolerance (min "
                                "eigenvalue " +
                                std::to_string(evals.minCoeff()) + ")");
  }
  Eigen::VectorXd clipped = evals.cwiseMax(0.0);
  GramSolution g;
  g.basis = std::move(basis);
  g.vectors = clipped.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  return g;
}

GramSolution gram_from_moments(const MomentVector& y, uint32_t level, double tol) {
  MomentMatrix m = moment_matrix(y, level);
  return gram_from_matrix(std::move(m.basis), m.to_double(), tol);
}

VectorReport verify_vector_constraints(const GramSolution& g, double tol) {
  VectorReport report;
  constexpr size_t kMaxListed = 100;
  const size_t dim = g.basis.size();
  Eigen::MatrixXd gram = g.vectors.transpose() * g.vectors;

  auto note = [&report](const SubsetKey& a, const SubsetKey& b, double amount,
                        const char* kind) {
    ++report.total_violations;
    report.max_violation = std::max(report.max_violation, amount);
    if (report.violations.size() < kMaxListed) {
      report.violations.push_back({a, b, amount, kind});
    }
  };

  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = i; j < dim; ++j) {
      ++report.checked_pairs;
      const double ip = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (ip < -tol) note(g.basis[i], g.basis[j], -ip, "negative");
      SubsetKey u = g.basis[i].union_with(g.basis[j]);
      int uidx = g.index_of(u);
      if (uidx >= 0) {
        const double norm_sq =
            gram(static_cast<Eigen::Index>(uidx), static_cast<Eigen::Index>(uidx));
        const double dev = std::abs(ip - norm_sq);
        if (dev > tol) note(g.basis[i], g.basis[j], dev, "union");
      }
    }
  }

  int empty_idx = g.index_of(SubsetKey::empty_set());
  if (empty_idx >= 0) {
    const double norm_sq = gram(empty_idx, empty_idx);
    report.empty_norm_deviation = std::abs(norm_sq - 1.0);
    if (report.empty_norm_deviation > tol) {
      note(SubsetKey::empty_set(), SubsetKey::empty_set(), report.empty_norm_deviation,
           "union");
    }
  }
  return report;
}

LiftCertificate certify_lift(const GramSolution& g, const MultilinearPoly& q, double tol) {
  Eigen::VectorXd combo = Eigen::VectorXd::Zero(g.vectors.rows());
  for (const auto& [k, c] : q.terms()) {
    int idx = g.index_of(k);
    if (idx < 0) {
      throw std::out_of_range("certify_lift: polynomial references uncovered subset " +
                              k.to_string());
    }
    combo += to_double(c) * g.vectors.col(idx);
  }
  Eigen::VectorXd empty = g.vec(SubsetKey::empty_set());
  LiftCertificate cert;
  cert.delta = combo.dot(empty);
  cert.residual = (combo - cert.delta * empty).norm();
  cert.accepted = cert.residual <= tol && cert.delta >= -tol;
  return cert;
}

}  // namespace lasgap
