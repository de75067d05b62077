#include "lasgap/xor_lasserre.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lasgap {

uint8_t AssignedSet::bit_of(uint32_t v) const {
  const auto& vars = set.vars();
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) {
    throw std::out_of_range("AssignedSet: variable " + std::to_string(v) + " not assigned");
  }
  return bits[static_cast<size_t>(it - vars.begin())];
}

std::string AssignedSet::to_string() const {
  std::string s = "(";
  const auto& vars = set.vars();
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += "x" + std::to_string(vars[i]) + "=" + std::to_string(int(bits[i]));
  }
  s += ")";
  return s;
}

std::vector<AssignedSet> solution_index(const Xor3Instance& inst, uint32_t r) {
  std::set<AssignedSet> pairs;
  auto add_all_assignments = [&pairs](const SubsetKey& s) {
    const size_t k = s.vars().size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
      AssignedSet a;
      a.set = s;
      a.bits.resize(k);
      for (size_t t = 0; t < k; ++t) a.bits[t] = (mask >> t) & 1;
      pairs.insert(std::move(a));
    }
  };
  for (const SubsetKey& s : enumerate_subsets(inst.n, std::min(r, inst.n))) {
    add_all_assignments(s);
  }
  for (const auto& c : inst.constraints) {
    add_all_assignments(SubsetKey::canonical({c.vars[0], c.vars[1], c.vars[2]}, inst.n));
  }
  return {pairs.begin(), pairs.end()};
}

MergedAssignment merge_assigned(const AssignedSet& a, const AssignedSet& b) {
  MergedAssignment out;
  const auto& av = a.set.vars();
  const auto& bv = b.set.vars();
  std::vector<uint32_t> vars;
  std::vector<uint8_t> bits;
  vars.reserve(av.size() + bv.size());
  bits.reserve(av.size() + bv.size());
  size_t i = 0;
  size_t j = 0;
  while (i < av.size() || j < bv.size()) {
    if (j == bv.size() || (i < av.size() && av[i] < bv[j])) {
      vars.push_back(av[i]);
      bits.push_back(a.bits[i]);
      ++i;
    } else if (i == av.size() || bv[j] < av[i]) {
      vars.push_back(bv[j]);
      bits.push_back(b.bits[j]);
      ++j;
    } else {
      if (a.bits[i] != b.bits[j]) return out;
      vars.push_back(av[i]);
      bits.push_back(a.bits[i]);
      ++i;
      ++j;
    }
  }
  out.ok = true;
  out.merged.set = SubsetKey(std::move(vars));
  out.merged.bits = std::move(bits);
  return out;
}

PlantedXorSolution::PlantedXorSolution(const Xor3Instance& inst, std::vector<uint8_t> xstar,
                                       uint32_t r)
    : n_(inst.n), r_(r), xstar_(std::move(xstar)) {
  if (xstar_.size() != inst.n) {
    throw std::invalid_argument("PlantedXorSolution: assignment length mismatch");
  }
  index_ = solution_index(inst, r);
  match_.resize(index_.size());
  for (size_t i = 0; i < index_.size(); ++i) {
    const auto& entry = index_[i];
    bool ok = true;
    const auto& vars = entry.set.vars();
    for (size_t t = 0; t < vars.size(); ++t) {
      if ((xstar_[vars[t]] ? 1 : 0) != entry.bits[t]) {
        ok = false;
        break;
      }
    }
    match_[i] = ok ? 1 : 0;
  }
}

PlantedXorSolution perfect_solution_from_assignment(const Xor3Instance& inst,
                                                    std::vector<uint8_t> xstar, uint32_t r) {
  if (satisfied_count(inst, xstar) != inst.m()) {
    throw std::invalid_argument(
        "perfect_solution_from_assignment: assignment does not satisfy every constraint");
  }
  return PlantedXorSolution(inst, std::move(xstar), r);
}

void ExplicitXorSolution::validate_shape() const {
  const auto dim = static_cast<Eigen::Index>(index_entries.size());
  if (gram.rows() != dim || gram.cols() != dim) {
    throw std::invalid_argument("ExplicitXorSolution: Gram size does not match index");
  }
  const double scale = 1.0 + gram.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      if (std::abs(gram(i, j) - gram(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("ExplicitXorSolution: Gram matrix not symmetric");
      }
    }
  }
}

ExplicitXorSolution materialize(const PlantedXorSolution& sol) {
  ExplicitXorSolution out;
  out.n_vars = sol.n();
  out.round = sol.r();
  out.index_entries = sol.index();
  const auto dim = static_cast<Eigen::Index>(out.index_entries.size());
  out.gram.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      out.gram(i, j) = to_double(sol.gram_entry(static_cast<size_t>(i), static_cast<size_t>(j)));
    }
  }
  return out;
}

XorFeasibilitySdp build_xor_level_sdp(const Xor3Instance& inst, uint32_t r) {
  inst.validate();
  XorFeasibilitySdp built;
  built.n_vars = inst.n;
  built.round = r;
  built.index = solution_index(inst, r);
  const auto dim = static_cast<uint32_t>(built.index.size());

  sdp::SdpProblem& p = built.problem;
  p.blocks.push_back({static_cast<int>(dim), false});
  p.sense = Sense::minimize;

  // A term's contribution to <A, X> doubles on off-diagonal positions, so
  // matrix-entry coefficients are halved there.
  auto entry_term = [](uint32_t i, uint32_t j, double target) {
    return sdp::SdpTerm{0, static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j)),
                        i == j ? target : target / 2.0};
  };

  {
    sdp::SdpRow row;
    row.terms.push_back(entry_term(0, 0, 1.0));
    row.rhs = 1.0;
    row.label = "normalize";
    p.constraints.push_back(std::move(row));
  }

  std::map<AssignedSet, std::pair<uint32_t, uint32_t>> representative;
  uint32_t slack_count = 0;
  for (uint32_t i = 0; i < dim; ++i) {
    for (uint32_t j = i; j < dim; ++j) {
      auto merged = merge_assigned(built.index[i], built.index[j]);
      if (!merged.ok) {
        sdp::SdpRow row;
        row.terms.push_back(entry_term(i, j, 1.0));
        row.rhs = 0.0;
        row.label = "zero " + built.index[i].to_string() + "|" + built.index[j].to_string();
        p.constraints.push_back(std::move(row));
        continue;
      }
      auto [it, inserted] = representative.emplace(merged.merged, std::make_pair(i, j));
      if (inserted) {
        sdp::SdpRow row;
        row.terms.push_back(entry_term(i, j, 1.0));
        row.terms.push_back(sdp::SdpTerm{1, static_cast<int>(slack_count),
                                         static_cast<int>(slack_count), -1.0});
        row.rhs = 0.0;
        row.label = "link " + merged.merged.to_string();
        p.constraints.push_back(std::move(row));
        ++slack_count;
      } else {
        sdp::SdpRow row;
        row.terms.push_back(entry_term(i, j, 1.0));
        row.terms.push_back(entry_term(it->second.first, it->second.second, -1.0));
        row.rhs = 0.0;
        row.label = "tie " + merged.merged.to_string();
        p.constraints.push_back(std::move(row));
      }
    }
  }

  std::vector<std::pair<SubsetKey, std::vector<uint32_t>>> by_set;
  for (uint32_t i = 0; i < dim; ++i) {
    if (by_set.empty() || !(by_set.back().first == built.index[i].set)) {
      by_set.push_back({built.index[i].set, {}});
    }
    by_set.back().second.push_back(i);
  }
  for (const auto& [s, members] : by_set) {
    if (s.vars().empty()) continue;
    sdp::SdpRow row;
    for (uint32_t i : members) row.terms.push_back(entry_term(i, i, 1.0));
    row.rhs = 1.0;
    row.label = "mass " + s.to_string();
    p.constraints.push_back(std::move(row));
  }

  std::map<AssignedSet, uint32_t> diag_position;
  for (uint32_t i = 0; i < dim; ++i) diag_position.emplace(built.index[i], i);
  for (size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    const auto& c = inst.constraints[ci];
    SubsetKey scope = SubsetKey::canonical({c.vars[0], c.vars[1], c.vars[2]}, inst.n);
    sdp::SdpRow row;
    for (uint64_t mask = 0; mask < 8; ++mask) {
      AssignedSet a;
      a.set = scope;
      a.bits = {uint8_t(mask & 1), uint8_t((mask >> 1) & 1), uint8_t((mask >> 2) & 1)};
      uint8_t parity = a.bits[0] ^ a.bits[1] ^ a.bits[2];
      if (parity != c.b) continue;
      row.terms.push_back(entry_term(diag_position.at(a), diag_position.at(a), 1.0));
    }
    row.rhs = 1.0;
    row.label = "sat C" + std::to_string(ci);
    p.constraints.push_back(std::move(row));
  }

  p.blocks.push_back({static_cast<int>(slack_count), true});
  p.validate();
  return built;
}

ExplicitXorSolution solution_from_sdp(const XorFeasibilitySdp& built,
                                      const sdp::SdpSolution& sol) {
  ExplicitXorSolution out;
  out.n_vars = built.n_vars;
  out.round = built.round;
  out.index_entries = built.index;
  if (sol.dense_blocks.empty() || sol.dense_blocks[0].rows() == 0) {
    throw std::invalid_argument("solution_from_sdp: solution has no dense Gram block");
  }
  out.gram = sol.dense_blocks[0];
  out.validate_shape();
  return out;
}

}  // namespace lasgap
