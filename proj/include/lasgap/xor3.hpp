#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lasgap/prng.hpp"

namespace lasgap {

// One parity constraint x_{vars[0]} XOR x_{vars[1]} XOR x_{vars[2]} = b over
// three distinct variables, stored with vars sorted ascending.
struct XorConstraint {
  std::array<uint32_t, 3> vars{};
  uint8_t b = 0;

  bool operator==(const XorConstraint&) const = default;
};

struct Xor3Instance {
  uint32_t n = 0;
  uint64_t seed = 0;
  std::string prng = Rng::kAlgorithmTag;
  std::vector<XorConstraint> constraints;

  size_t m() const { return constraints.size(); }

  // Checks variable ranges, sortedness, and distinctness of each triple.
  void validate() const;
};

// Uniform instance: each constraint is an independent uniform draw over the
// 2 * C(n,3) possible (triple, bit) pairs. Identical seed gives an identical
// instance on every platform.
Xor3Instance sample_random(uint32_t n, uint32_t m, uint64_t seed);

// Triples drawn as in sample_random; parities set so that the returned full
// assignment satisfies every constraint. When plant is empty the planted
// assignment is drawn from the same stream first.
std::pair<Xor3Instance, std::vector<uint8_t>> sample_planted(
    uint32_t n, uint32_t m, uint64_t seed,
    std::optional<std::vector<uint8_t>> plant = std::nullopt);

// Number of constraints satisfied by the full assignment x (|x| = n).
uint32_t satisfied_count(const Xor3Instance& inst, const std::vector<uint8_t>& x);

struct MaxSatResult {
  uint32_t best = 0;
  std::vector<uint8_t> witness;  // lexicographically smallest maximizer
};

// Exact maximum over all 2^n assignments; guarded at n <= 28.
MaxSatResult max_sat_bruteforce(const Xor3Instance& inst);

struct OccurrenceCounts {
  std::vector<uint32_t> counts;  // one per variable
  uint32_t max_count = 0;
};

OccurrenceCounts occurrence_counts(const Xor3Instance& inst);

nlohmann::json instance_to_json(const Xor3Instance& inst);
Xor3Instance instance_from_json(const nlohmann::json& j);

// Text form: header "p xor <n> <m>" followed by one "i1 i2 i3 b" line per
// constraint.
void export_dimacs(const Xor3Instance& inst, std::ostream& out);
std::string export_dimacs_string(const Xor3Instance& inst);

// Assignment of bits to a subset of the variables, at most one bit each.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::map<uint32_t, uint8_t> bindings)
      : bindings_(std::move(bindings)) {}

  static PartialAssignment from_full(const std::vector<uint8_t>& x,
                                     const std::vector<uint32_t>& vars);

  const std::map<uint32_t, uint8_t>& bindings() const { return bindings_; }
  bool has(uint32_t v) const { return bindings_.count(v) != 0; }
  uint8_t at(uint32_t v) const;
  size_t size() const { return bindings_.size(); }

  void set(uint32_t v, uint8_t bit);

  // Restriction to the given variables (missing ones are skipped).
  PartialAssignment restrict_to(const std::vector<uint32_t>& vars) const;

  // Union of two assignments; nullopt if they disagree on a shared variable.
  std::optional<PartialAssignment> merged_with(const PartialAssignment& other) const;

  bool operator==(const PartialAssignment&) const = default;
  auto operator<=>(const PartialAssignment&) const = default;

  std::string to_string() const;

 private:
  std::map<uint32_t, uint8_t> bindings_;
};

}  // namespace lasgap
