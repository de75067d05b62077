#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "lasgap/poly.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/subset.hpp"

namespace lasgap {

// Pseudo-moment vector of round r: one rational value per subset of size <= 2r,
// with the empty set pinned to 1.
struct MomentVector {
  uint32_t n = 0;
  uint32_t round = 0;
  std::map<SubsetKey, Rational> values;

  const Rational& at(const SubsetKey& k) const;  // throws on missing entry
  bool has(const SubsetKey& k) const { return values.count(k) != 0; }
  void validate() const;  // empty-set entry present and equal to 1, sizes <= 2r
};

// Exact moments of the point mass at a 0/1 assignment: y_S = prod_{v in S} x_v.
MomentVector rank1_lift(const std::vector<uint8_t>& x, uint32_t round);

// Convex combination of moment vectors (weights positive rationals summing to 1).
MomentVector convex_combination(
    const std::vector<std::pair<Rational, MomentVector>>& parts);

// Symmetric matrix indexed by subsets with entry(S, T) = y_{S union T}.
struct MomentMatrix {
  std::vector<SubsetKey> basis;            // (size, lex) order
  std::vector<std::vector<Rational>> entries;  // square, symmetric

  Eigen::MatrixXd to_double() const;
};

// Basis = all subsets of size <= level; every referenced union must exist in y.
MomentMatrix moment_matrix(const MomentVector& y, uint32_t level);

// Shift operator: (P * y)_S = sum_T P(T) y_{S union T}, for |S| <= max_size.
// Every referenced union must exist in y.
std::map<SubsetKey, Rational> shift(const MultilinearPoly& p, const MomentVector& y,
                                    uint32_t max_size);

// Matrix of the shifted vector: entry(A, B) = (P * y)_{A union B} over basis <= level.
MomentMatrix shifted_moment_matrix(const MultilinearPoly& p, const MomentVector& y,
                                   uint32_t level);

// <P, y> = sum_T P(T) y_T
Rational pair_poly_moments(const MultilinearPoly& p, const MomentVector& y);

}  // namespace lasgap
