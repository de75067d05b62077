#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace lasgap {

// Deterministic cross-platform RNG. mt19937_64 produces a bit-exact stream on
// every conforming implementation; bounded draws use masked rejection because
// std::uniform_int_distribution is implementation-defined.
class Rng {
 public:
  static constexpr const char* kAlgorithmTag = "mt19937_64-rej/v1";

  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  bool next_bit() { return (gen_() & 1u) != 0; }

  // Uniform in [0, bound). bound must be positive.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    if (bound == 1) return 0;
    uint64_t mask = mask_for(bound - 1);
    for (;;) {
      uint64_t v = gen_() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform in [lo, hi] inclusive.
  uint64_t in_range(uint64_t lo, uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::in_range: empty range");
    return lo + below(hi - lo + 1);
  }

  // Fisher-Yates with draws from this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), returned sorted.
  std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t k) {
    if (k > n) throw std::invalid_argument("Rng::sample_distinct: k > n");
    std::vector<uint32_t> picked;
    picked.reserve(k);
    while (picked.size() < k) {
      uint32_t v = static_cast<uint32_t>(below(n));
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

 private:
  static uint64_t mask_for(uint64_t max_value) {
    uint64_t mask = max_value;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    return mask;
  }

  std::mt19937_64 gen_;
};

}  // namespace lasgap
