#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lasgap {

// Sorted duplicate-free set of variable indices. Ordered by (size, lex) so that
// enumeration order, map iteration order, and serialized order all agree.
class SubsetKey {
 public:
  SubsetKey() = default;

  // Trusts that `sorted_unique` is strictly increasing; checked in debug builds.
  explicit SubsetKey(std::vector<uint32_t> sorted_unique);

  // Sorts, deduplicates, and range-checks against the ambient variable count.
  static SubsetKey canonical(std::vector<uint32_t> vars, uint32_t n);

  static SubsetKey empty_set() { return SubsetKey(); }
  static SubsetKey singleton(uint32_t v) { return SubsetKey(std::vector<uint32_t>{v}); }

  const std::vector<uint32_t>& vars() const { return vars_; }
  size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  bool contains(uint32_t v) const;
  uint32_t max_var() const;  // requires non-empty

  SubsetKey union_with(const SubsetKey& other) const;
  SubsetKey intersect(const SubsetKey& other) const;
  SubsetKey with(uint32_t v) const;
  SubsetKey without(uint32_t v) const;
  bool is_subset_of(const SubsetKey& other) const;

  bool operator==(const SubsetKey& other) const { return vars_ == other.vars_; }
  std::strong_ordering operator<=>(const SubsetKey& other) const;

  std::string to_string() const;  // "{}" or "{1,3,5}"

 private:
  std::vector<uint32_t> vars_;
};

struct SubsetKeyHash {
  size_t operator()(const SubsetKey& k) const;
};

// All subsets of {0..n-1} with |S| <= max_size, in (size, lex) order.
std::vector<SubsetKey> enumerate_subsets(uint32_t n, uint32_t max_size);

// sum_{s=0..max_size} C(n, s)
uint64_t subset_count(uint32_t n, uint32_t max_size);

uint64_t binomial(uint32_t n, uint32_t k);

}  // namespace lasgap
