#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lasgap/rational.hpp"
#include "lasgap/sdp/problem.hpp"
#include "lasgap/sdp/solve.hpp"
#include "lasgap/subset.hpp"
#include "lasgap/xor3.hpp"

namespace lasgap {

// A subset of variables together with one bit per member, ordered (set, bits).
struct AssignedSet {
  SubsetKey set;
  std::vector<uint8_t> bits;  // parallel to set.vars()

  bool operator==(const AssignedSet&) const = default;
  auto operator<=>(const AssignedSet&) const = default;

  uint8_t bit_of(uint32_t v) const;
  std::string to_string() const;
};

// All (S, alpha) pairs a level-r solution must cover: every subset of size
// at most r under every assignment, plus every constraint scope under every
// assignment. Sorted ascending, no duplicates.
std::vector<AssignedSet> solution_index(const Xor3Instance& inst, uint32_t r);

// Merge of two assigned sets; ok=false when they disagree on a shared variable.
struct MergedAssignment {
  bool ok = false;
  AssignedSet merged;
};
MergedAssignment merge_assigned(const AssignedSet& a, const AssignedSet& b);

// Rank-1 solution from a perfectly satisfying assignment: the Gram entry for
// ((S,alpha),(T,beta)) is 1 when both restrictions of the assignment match,
// else 0. Exact in rational arithmetic.
class PlantedXorSolution {
 public:
  PlantedXorSolution(const Xor3Instance& inst, std::vector<uint8_t> xstar, uint32_t r);

  uint32_t n() const { return n_; }
  uint32_t r() const { return r_; }
  const std::vector<AssignedSet>& index() const { return index_; }
  const std::vector<uint8_t>& planted() const { return xstar_; }

  Rational gram_entry(size_t i, size_t j) const {
    return (match_[i] && match_[j]) ? Rational(1) : Rational(0);
  }

 private:
  uint32_t n_ = 0;
  uint32_t r_ = 0;
  std::vector<uint8_t> xstar_;
  std::vector<AssignedSet> index_;
  std::vector<char> match_;
};

PlantedXorSolution perfect_solution_from_assignment(const Xor3Instance& inst,
                                                    std::vector<uint8_t> xstar, uint32_t r);

// Solution with an explicit numeric Gram matrix over the indexed pairs.
struct ExplicitXorSolution {
  uint32_t n_vars = 0;
  uint32_t round = 0;
  std::vector<AssignedSet> index_entries;
  Eigen::MatrixXd gram;

  uint32_t n() const { return n_vars; }
  uint32_t r() const { return round; }
  const std::vector<AssignedSet>& index() const { return index_entries; }
  double gram_entry(size_t i, size_t j) const {
    return gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  // Checks the matrix is square of matching size and symmetric.
  void validate_shape() const;
};

ExplicitXorSolution materialize(const PlantedXorSolution& sol);

// Feasibility SDP whose PSD block is the Gram matrix of a level-r solution:
// conflicting pairs pinned to zero, entries sharing a merged assignment tied
// together and tied to a nonnegative slack, per-set total mass 1, and
// per-constraint satisfied mass 1.
struct XorFeasibilitySdp {
  uint32_t n_vars = 0;
  uint32_t round = 0;
  std::vector<AssignedSet> index;
  sdp::SdpProblem problem;
};

XorFeasibilitySdp build_xor_level_sdp(const Xor3Instance& inst, uint32_t r);

ExplicitXorSolution solution_from_sdp(const XorFeasibilitySdp& built,
                                      const sdp::SdpSolution& sol);

// Worst-case violations of the solution properties, all zero on an exact
// rank-1 solution: perfect value per constraint, nonnegative inner products,
// zero on conflicting pairs, equal entries across pairs sharing a merged
// assignment, unit mass per set, and the sum-to-empty-vector residual.
template <class Scalar>
struct XorValidationReport {
  Scalar value_total{};
  Scalar max_value_violation{};
  Scalar min_inner{};
  Scalar max_incompatible{};
  Scalar max_union_spread{};
  Scalar max_marginal_violation{};
  Scalar max_sum_residual{};

  bool pass(const Scalar& tol) const {
    return max_value_violation <= tol && min_inner >= -tol && max_incompatible <= tol &&
           max_union_spread <= tol && max_marginal_violation <= tol &&
           max_sum_residual <= tol;
  }
};

template <class Solution>
auto validate_solution(const Solution& sol, const Xor3Instance& inst)
    -> XorValidationReport<std::remove_cvref_t<decltype(sol.gram_entry(0, 0))>> {
  using Scalar = std::remove_cvref_t<decltype(sol.gram_entry(0, 0))>;
  const auto& index = sol.index();
  std::map<AssignedSet, size_t> position;
  for (size_t i = 0; i < index.size(); ++i) position.emplace(index[i], i);

  auto lookup = [&](const AssignedSet& a) -> size_t {
    auto it = position.find(a);
    if (it == position.end()) {
      throw std::out_of_range("validate_solution: Gram entry missing for " + a.to_string());
    }
    return it->second;
  };

  XorValidationReport<Scalar> report;
  report.min_inner = Scalar(0);

  const size_t empty_pos = lookup(AssignedSet{});
  bool first_inner = true;

  std::map<AssignedSet, std::pair<Scalar, Scalar>> group_range;
  for (size_t i = 0; i < index.size(); ++i) {
    for (size_t j = i; j < index.size(); ++j) {
      Scalar g = sol.gram_entry(i, j);
      if (first_inner || g < report.min_inner) report.min_inner = g;
      first_inner = false;
      auto merged = merge_assigned(index[i], index[j]);
      if (!merged.ok) {
        Scalar mag = g < Scalar(0) ? Scalar(-g) : g;
        if (mag > report.max_incompatible) report.max_incompatible = mag;
        continue;
      }
      auto [it, inserted] = group_range.emplace(merged.merged, std::make_pair(g, g));
      if (!inserted) {
        if (g < it->second.first) it->second.first = g;
        if (g > it->second.second) it->second.second = g;
      }
    }
  }
  for (const auto& [key, range] : group_range) {
    Scalar spread = range.second - range.first;
    if (spread > report.max_union_spread) report.max_union_spread = spread;
  }

  std::vector<SubsetKey> sets;
  for (const auto& entry : index) {
    if (sets.empty() || !(sets.back() == entry.set)) sets.push_back(entry.set);
  }

  auto enumerate_assignments = [](const SubsetKey& s) {
    std::vector<AssignedSet> out;
    const size_t k = s.vars().size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
      AssignedSet a;
      a.set = s;
      a.bits.resize(k);
      for (size_t t = 0; t < k; ++t) a.bits[t] = (mask >> t) & 1;
      out.push_back(std::move(a));
    }
    return out;
  };

  for (const SubsetKey& s : sets) {
    Scalar mass(0);
    Scalar residual = sol.gram_entry(empty_pos, empty_pos);
    auto assignments = enumerate_assignments(s);
    std::vector<size_t> pos;
    pos.reserve(assignments.size());
    for (const auto& a : assignments) pos.push_back(lookup(a));
    for (size_t a = 0; a < pos.size(); ++a) {
      mass += sol.gram_entry(pos[a], pos[a]);
      residual -= Scalar(2) * sol.gram_entry(std::min(pos[a], empty_pos),
                                             std::max(pos[a], empty_pos));
      for (size_t b = 0; b < pos.size(); ++b) {
        residual += sol.gram_entry(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
      }
    }
    Scalar mass_violation = mass - Scalar(1);
    if (mass_violation < Scalar(0)) mass_violation = -mass_violation;
    if (mass_violation > report.max_marginal_violation) {
      report.max_marginal_violation = mass_violation;
    }
    if (residual > report.max_sum_residual) report.max_sum_residual = residual;
  }

  for (const auto& c : inst.constraints) {
    SubsetKey scope = SubsetKey::canonical({c.vars[0], c.vars[1], c.vars[2]}, inst.n);
    Scalar satisfied_mass(0);
    for (const auto& a : enumerate_assignments(scope)) {
      uint8_t parity = a.bits[0] ^ a.bits[1] ^ a.bits[2];
      if (parity != c.b) continue;
      size_t p = lookup(a);
      satisfied_mass += sol.gram_entry(p, p);
    }
    report.value_total += satisfied_mass;
    Scalar violation = satisfied_mass - Scalar(1);
    if (violation < Scalar(0)) violation = -violation;
    if (violation > report.max_value_violation) report.max_value_violation = violation;
  }

  return report;
}

}  // namespace lasgap
