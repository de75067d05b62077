#include "lasgap/sdp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace lasgap::sdp {

namespace {

void validate_term(const SdpTerm& t, const std::vector<BlockSpec>& blocks,
                   const std::string& where) {
  if (t.block < 0 || static_cast<size_t>(t.block) >= blocks.size()) {
    throw std::invalid_argument(where + ": block index out of range");
  }
  const BlockSpec& b = blocks[static_cast<size_t>(t.block)];
  if (t.i < 0 || t.j < t.i || t.j >= b.size) {
    throw std::invalid_argument(where + ": entry position out of range");
  }
  if (b.diagonal && t.i != t.j) {
    throw std::invalid_argument(where + ": off-diagonal entry in diagonal block");
  }
  if (!std::isfinite(t.coeff)) {
    throw std::invalid_argument(where + ": non-finite coefficient");
  }
}

std::vector<SdpTerm> canonical_terms(const std::vector<SdpTerm>& terms) {
  std::map<std::tuple<int, int, int>, double> merged;
  for (const auto& t : terms) {
    merged[{t.block, t.i, t.j}] += t.coeff;
  }
  std::vector<SdpTerm> out;
  out.reserve(merged.size());
  for (const auto& [pos, c] : merged) {
    if (c == 0.0) continue;
    out.push_back({std::get<0>(pos), std::get<1>(pos), std::get<2>(pos), c});
  }
  return out;
}

}  // namespace

void SdpProblem::validate() const {
  for (const auto& b : blocks) {
    if (b.size <= 0) throw std::invalid_argument("SdpProblem: non-positive block size");
  }
  if (constraints.empty()) {
    throw std::invalid_argument("SdpProblem: no constraints");
  }
  for (const auto& row : constraints) {
    if (row.terms.empty()) {
      throw std::invalid_argument("SdpProblem: empty constraint row" +
                                  (row.label.empty() ? "" : " (" + row.label + ")"));
    }
    for (const auto& t : row.terms) validate_term(t, blocks, "constraint");
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("SdpProblem: non-finite rhs");
  }
  for (const auto& t : objective) validate_term(t, blocks, "objective");
  for (const auto& t : variable_positions) validate_term(t, blocks, "variable position");
  if (variable_names.size() != variable_positions.size()) {
    throw std::invalid_argument("SdpProblem: variable naming arrays disagree");
  }
}

SdpProblem SdpProblem::canonical() const {
  SdpProblem out;
  out.blocks = blocks;
  out.sense = lasgap::Sense::minimize;
  double flip = (sense == lasgap::Sense::maximize) ? -1.0 : 1.0;
  out.objective = canonical_terms(objective);
  if (flip < 0) {
    for (auto& t : out.objective) t.coeff = -t.coeff;
  }
  out.constraints.reserve(constraints.size());
  for (const auto& row : constraints) {
    SdpRow r;
    r.terms = canonical_terms(row.terms);
    r.rhs = row.rhs;
    out.constraints.push_back(std::move(r));
  }
  return out;
}

bool canonical_equal(const SdpProblem& a, const SdpProblem& b, double tol) {
  SdpProblem ca = a.canonical();
  SdpProblem cb = b.canonical();
  if (ca.blocks.size() != cb.blocks.size()) return false;
  for (size_t i = 0; i < ca.blocks.size(); ++i) {
    if (!(ca.blocks[i] == cb.blocks[i])) return false;
  }
  auto term_close = [tol](const SdpTerm& x, const SdpTerm& y) {
    return x.block == y.block && x.i == y.i && x.j == y.j &&
           std::abs(x.coeff - y.coeff) <= tol;
  };
  auto terms_close = [&](const std::vector<SdpTerm>& x, const std::vector<SdpTerm>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (!term_close(x[i], y[i])) return false;
    }
    return true;
  };
  if (!terms_close(ca.objective, cb.objective)) return false;
  if (ca.constraints.size() != cb.constraints.size()) return false;
  for (size_t i = 0; i < ca.constraints.size(); ++i) {
    if (std::abs(ca.constraints[i].rhs - cb.constraints[i].rhs) > tol) return false;
    if (!terms_close(ca.constraints[i].terms, cb.constraints[i].terms)) return false;
  }
  return true;
}

namespace {

nlohmann::json term_to_json(const SdpTerm& t) {
  return {{"block", t.block}, {"i", t.i}, {"j", t.j}, {"coeff", t.coeff}};
}

SdpTerm term_from_json(const nlohmann::json& j) {
  return {j.at("block").get<int>(), j.at("i").get<int>(), j.at("j").get<int>(),
          j.at("coeff").get<double>()};
}

}  // namespace

nlohmann::json sdp_to_json(const SdpProblem& p) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : p.blocks) {
    blocks.push_back({{"size", b.size}, {"diagonal", b.diagonal}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : p.constraints) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : row.terms) terms.push_back(term_to_json(t));
    rows.push_back({{"terms", std::move(terms)}, {"rhs", row.rhs}, {"label", row.label}});
  }
  nlohmann::json obj = nlohmann::json::array();
  for (const auto& t : p.objective) obj.push_back(term_to_json(t));
  nlohmann::json names = p.variable_names;
  nlohmann::json positions = nlohmann::json::array();
  for (const auto& t : p.variable_positions) positions.push_back(term_to_json(t));
  return {{"schema", "v1"},
          {"blocks", std::move(blocks)},
          {"constraints", std::move(rows)},
          {"objective", std::move(obj)},
          {"sense", lasgap::sense_to_string(p.sense)},
          {"variable_names", std::move(names)},
          {"variable_positions", std::move(positions)}};
}

SdpProblem sdp_from_json(const nlohmann::json& j) {
  SdpProblem p;
  for (const auto& b : j.at("blocks")) {
    p.blocks.push_back({b.at("size").get<int>(), b.at("diagonal").get<bool>()});
  }
  for (const auto& row : j.at("constraints")) {
    SdpRow r;
    for (const auto& t : row.at("terms")) r.terms.push_back(term_from_json(t));
    r.rhs = row.at("rhs").get<double>();
    r.label = row.value("label", std::string());
    p.constraints.push_back(std::move(r));
  }
  for (const auto& t : j.at("objective")) p.objective.push_back(term_from_json(t));
  p.sense = lasgap::sense_from_string(j.at("sense").get<std::string>());
  if (j.contains("variable_names")) {
    p.variable_names = j.at("variable_names").get<std::vector<std::string>>();
    for (const auto& t : j.at("variable_positions")) {
      p.variable_positions.push_back(term_from_json(t));
    }
  }
  p.validate();
  return p;
}

}  // namespace lasgap::sdp
