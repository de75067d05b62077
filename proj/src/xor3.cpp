#include "lasgap/xor3.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lasgap {

void Xor3Instance::validate() const {
  for (const auto& c : constraints) {
    if (!(c.vars[0] < c.vars[1] && c.vars[1] < c.vars[2])) {
      throw std::invalid_argument("Xor3Instance: constraint triple not sorted distinct");
    }
    if (c.vars[2] >= n) {
      throw std::invalid_argument("Xor3Instance: variable index out of range");
    }
    if (c.b > 1) throw std::invalid_argument("Xor3Instance: parity bit must be 0 or 1");
  }
}

namespace {

XorConstraint draw_constraint(Rng& rng, uint32_t n) {
  auto triple = rng.sample_distinct(n, 3);
  XorConstraint c;
  c.vars = {triple[0], triple[1], triple[2]};
  c.b = rng.next_bit() ? 1 : 0;
  return c;
}

}  // namespace

Xor3Instance sample_random(uint32_t n, uint32_t m, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("sample_random: need at least 3 variables");
  Xor3Instance inst;
  inst.n = n;
  inst.seed = seed;
  Rng rng(seed);
  inst.constraints.reserve(m);
  for (uint32_t i = 0; i < m; ++i) inst.constraints.push_back(draw_constraint(rng, n));
  return inst;
}

std::pair<Xor3Instance, std::vector<uint8_t>> sample_planted(
    uint32_t n, uint32_t m, uint64_t seed, std::optional<std::vector<uint8_t>> plant) {
  if (n < 3) throw std::invalid_argument("sample_planted: need at least 3 variables");
  Rng rng(seed);
  std::vector<uint8_t> xstar;
  if (plant.has_value()) {
    if (plant->size() != n) {
      throw std::invalid_argument("sample_planted: plant length mismatch");
    }
    xstar = std::move(*plant);
  } else {
    xstar.resize(n);
    for (uint32_t v = 0; v < n; ++v) xstar[v] = rng.next_bit() ? 1 : 0;
  }
  Xor3Instance inst;
  inst.n = n;
  inst.seed = seed;
  inst.constraints.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    auto triple = rng.sample_distinct(n, 3);
    XorConstraint c;
    c.vars = {triple[0], triple[1], triple[2]};
    c.b = xstar[c.vars[0]] ^ xstar[c.vars[1]] ^ xstar[c.vars[2]];
    inst.constraints.push_back(c);
  }
  return {std::move(inst), std::move(xstar)};
}

uint32_t satisfied_count(const Xor3Instance& inst, const std::vector<uint8_t>& x) {
  if (x.size() != inst.n) throw std::invalid_argument("satisfied_count: assignment length mismatch");
  uint32_t count = 0;
  for (const auto& c : inst.constraints) {
    uint8_t parity = x[c.vars[0]] ^ x[c.vars[1]] ^ x[c.vars[2]];
    if (parity == c.b) ++count;
  }
  return count;
}

MaxSatResult max_sat_bruteforce(const Xor3Instance& inst) {
  if (inst.n > 28) throw std::invalid_argument("max_sat_bruteforce: n exceeds the 28-variable guard");
  const uint32_t n = inst.n;
  MaxSatResult result;
  result.witness.assign(n, 0);
  bool have_any = false;
  std::vector<uint8_t> x(n);
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < total; ++mask) {
    // Bit n-1-v holds x_v, so ascending mask order is lexicographic order on
    // (x_0, ..., x_{n-1}) and the first maximizer found is the smallest one.
    for (uint32_t v = 0; v < n; ++v) x[v] = (mask >> (n - 1 - v)) & 1;
    uint32_t count = satisfied_count(inst, x);
    if (!have_any || count > result.best) {
      have_any = true;
      result.best = count;
      result.witness = x;
    }
  }
  return result;
}

OccurrenceCounts occurrence_counts(const Xor3Instance& inst) {
  OccurrenceCounts oc;
  oc.counts.assign(inst.n, 0);
  for (const auto& c : inst.constraints) {
    for (uint32_t v : c.vars) ++oc.counts[v];
  }
  oc.max_count = oc.counts.empty() ? 0 : *std::max_element(oc.counts.begin(), oc.counts.end());
  return oc;
}

nlohmann::json instance_to_json(const Xor3Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["seed"] = inst.seed;
  j["prng"] = inst.prng;
  auto arr = nlohmann::json::array();
  for (const auto& c : inst.constraints) {
    arr.push_back({c.vars[0], c.vars[1], c.vars[2], c.b});
  }
  j["constraints"] = std::move(arr);
  return j;
}

Xor3Instance instance_from_json(const nlohmann::json& j) {
  Xor3Instance inst;
  inst.n = j.at("n").get<uint32_t>();
  inst.seed = j.at("seed").get<uint64_t>();
  inst.prng = j.at("prng").get<std::string>();
  for (const auto& row : j.at("constraints")) {
    if (!row.is_array() || row.size() != 4) {
      throw std::invalid_argument("instance_from_json: constraint rows must be [i1,i2,i3,b]");
    }
    XorConstraint c;
    c.vars = {row[0].get<uint32_t>(), row[1].get<uint32_t>(), row[2].get<uint32_t>()};
    c.b = row[3].get<uint8_t>();
    inst.constraints.push_back(c);
  }
  inst.validate();
  return inst;
}

void export_dimacs(const Xor3Instance& inst, std::ostream& out) {
  out << "p xor " << inst.n << ' ' << inst.constraints.size() << '\n';
  for (const auto& c : inst.constraints) {
    out << c.vars[0] << ' ' << c.vars[1] << ' ' << c.vars[2] << ' ' << int(c.b) << '\n';
  }
}

std::string export_dimacs_string(const Xor3Instance& inst) {
  std::ostringstream out;
  export_dimacs(inst, out);
  return out.str();
}

PartialAssignment PartialAssignment::from_full(const std::vector<uint8_t>& x,
                                               const std::vector<uint32_t>& vars) {
  std::map<uint32_t, uint8_t> b;
  for (uint32_t v : vars) {
    if (v >= x.size()) throw std::out_of_range("PartialAssignment::from_full: variable out of range");
    b[v] = x[v] ? 1 : 0;
  }
  return PartialAssignment(std::move(b));
}

uint8_t PartialAssignment::at(uint32_t v) const {
  auto it = bindings_.find(v);
  if (it == bindings_.end()) {
    throw std::out_of_range("PartialAssignment: variable " + std::to_string(v) + " unbound");
  }
  return it->second;
}

void PartialAssignment::set(uint32_t v, uint8_t bit) { bindings_[v] = bit ? 1 : 0; }

PartialAssignment PartialAssignment::restrict_to(const std::vector<uint32_t>& vars) const {
  std::map<uint32_t, uint8_t> b;
  for (uint32_t v : vars) {
    auto it = bindings_.find(v);
    if (it != bindings_.end()) b[v] = it->second;
  }
  return PartialAssignment(std::move(b));
}

std::optional<PartialAssignment> PartialAssignment::merged_with(
    const PartialAssignment& other) const {
  std::map<uint32_t, uint8_t> b = bindings_;
  for (const auto& [v, bit] : other.bindings_) {
    auto [it, inserted] = b.emplace(v, bit);
    if (!inserted && it->second != bit) return std::nullopt;
  }
  return PartialAssignment(std::move(b));
}

std::string PartialAssignment::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, bit] : bindings_) {
    if (!first) s += ", ";
    first = false;
    s += "x" + std::to_string(v) + "=" + std::to_string(int(bit));
  }
  s += "}";
  return s;
}

}  // namespace lasgap
