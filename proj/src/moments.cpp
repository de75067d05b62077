#include "lasgap/moments.hpp"

#include <stdexcept>

namespace lasgap {

const Rational& MomentVector::at(const SubsetKey& k) const {
  auto it = values.find(k);
  if (it == values.end()) {
    throw std::out_of_range("MomentVector: missing entry for " + k.to_string());
  }
  return it->second;
}

void MomentVector::validate() const {
  auto it = values.find(SubsetKey::empty_set());
  if (it == values.end() || it->second != 1) {
    throw std::invalid_argument("MomentVector: empty-set entry must be 1");
  }
  for (const auto& [k, v] : values) {
    if (k.size() > 2 * round) {
      throw std::invalid_argument("MomentVector: entry " + k.to_string() +
                                  " exceeds size 2r");
    }
    if (!k.empty() && k.max_var() >= n) {
      throw std::out_of_range("MomentVector: entry " + k.to_string() + " out of range");
    }
  }
}

MomentVector rank1_lift(const std::vector<uint8_t>& x, uint32_t round) {
  MomentVector y;
  y.n = static_cast<uint32_t>(x.size());
  y.round = round;
  for (const auto& key : enumerate_subsets(y.n, 2 * round)) {
    bool all_one = true;
    for (uint32_t v : key.vars()) {
      if (x[v] == 0) {
        all_one = false;
        break;
      }
    }
    y.values.emplace(key, Rational(all_one ? 1 : 0));
  }
  return y;
}

MomentVector convex_combination(
    const std::vector<std::pair<Rational, MomentVector>>& parts) {
  if (parts.empty()) throw std::invalid_argument("convex_combination: no parts");
  Rational total(0);
  for (const auto& [w, y] : parts) {
    if (w <= 0) throw std::invalid_argument("convex_combination: weights must be positive");
    total += w;
    if (y.n != parts.front().second.n || y.round != parts.front().second.round) {
      throw std::invalid_argument("convex_combination: mismatched shapes");
    }
  }
  if (total != 1) throw std::invalid_argument("convex_combination: weights must sum to 1");
  MomentVector out;
  out.n = parts.front().second.n;
  out.round = parts.front().second.round;
  for (const auto& [w, y] : parts) {
    for (const auto& [k, v] : y.values) {
      out.values[k] += w * v;
    }
  }
  return out;
}

Eigen::MatrixXd MomentMatrix::to_double() const {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = lasgap::to_double(entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
  }
  return m;
}

MomentMatrix moment_matrix(const MomentVector& y, uint32_t level) {
  MomentMatrix m;
  m.basis = enumerate_subsets(y.n, level);
  size_t dim = m.basis.size();
  m.entries.assign(dim, std::vector<Rational>(dim));
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = i; j < dim; ++j) {
      const Rational& v = y.at(m.basis[i].union_with(m.basis[j]));
      m.entries[i][j] = v;
      m.entries[j][i] = v;
    }
  }
  return m;
}

std::map<SubsetKey, Rational> shift(const MultilinearPoly& p, const MomentVector& y,
                                    uint32_t max_size) {
  std::map<SubsetKey, Rational> out;
  for (const auto& key : enumerate_subsets(y.n, max_size)) {
    Rational total(0);
    for (const auto& [t, c] : p.terms()) {
      total += c * y.at(key.union_with(t));
    }
    out.emplace(key, std::move(total));
  }
  return out;
}

MomentMatrix shifted_moment_matrix(const MultilinearPoly& p, const MomentVector& y,
                                   uint32_t level) {
  MomentMatrix m;
  m.basis = enumerate_subsets(y.n, level);
  size_t dim = m.basis.size();
  m.entries.assign(dim, std::vector<Rational>(dim));
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = i; j < dim; ++j) {
      SubsetKey u = m.basis[i].union_with(m.basis[j]);
      Rational total(0);
      for (const auto& [t, c] : p.terms()) {
        total += c * y.at(u.union_with(t));
      }
      m.entries[i][j] = total;
      m.entries[j][i] = std::move(total);
    }
  }
  return m;
}

Rational pair_poly_moments(const MultilinearPoly& p, const MomentVector& y) {
  Rational total(0);
  for (const auto& [t, c] : p.terms()) total += c * y.at(t);
  return total;
}

}  // namespace lasgap
