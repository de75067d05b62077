#include "lasgap/subset.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lasgap {

SubsetKey::SubsetKey(std::vector<uint32_t> sorted_unique) : vars_(std::move(sorted_unique)) {
  assert(std::is_sorted(vars_.begin(), vars_.end()));
  assert(std::adjacent_find(vars_.begin(), vars_.end()) == vars_.end());
}

SubsetKey SubsetKey::canonical(std::vector<uint32_t> vars, uint32_t n) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (!vars.empty() && vars.back() >= n) {
    throw std::out_of_range("SubsetKey::canonical: variable index " +
                            std::to_string(vars.back()) + " out of range for n=" +
                            std::to_string(n));
  }
  return SubsetKey(std::move(vars));
}

bool SubsetKey::contains(uint32_t v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

uint32_t SubsetKey::max_var() const {
  if (vars_.empty()) throw std::logic_error("SubsetKey::max_var on empty set");
  return vars_.back();
}

SubsetKey SubsetKey::union_with(const SubsetKey& other) const {
  std::vector<uint32_t> out;
  out.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                 std::back_inserter(out));
  return SubsetKey(std::move(out));
}

SubsetKey SubsetKey::intersect(const SubsetKey& other) const {
  std::vector<uint32_t> out;
  std::set_intersection(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                        std::back_inserter(out));
  return SubsetKey(std::move(out));
}

SubsetKey SubsetKey::with(uint32_t v) const {
  if (contains(v)) return *this;
  std::vector<uint32_t> out = vars_;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return SubsetKey(std::move(out));
}

SubsetKey SubsetKey::without(uint32_t v) const {
  std::vector<uint32_t> out;
  out.reserve(vars_.size());
  for (uint32_t u : vars_) {
    if (u != v) out.push_back(u);
  }
  return SubsetKey(std::move(out));
}

bool SubsetKey::is_subset_of(const SubsetKey& other) const {
  return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
}

std::strong_ordering SubsetKey::operator<=>(const SubsetKey& other) const {
  if (auto c = vars_.size() <=> other.vars_.size(); c != 0) return c;
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (auto c = vars_[i] <=> other.vars_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string SubsetKey::to_string() const {
  std::string s = "{";
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vars_[i]);
  }
  s += "}";
  return s;
}

size_t SubsetKeyHash::operator()(const SubsetKey& k) const {
  uint64_t h = 1469598103934665603ull;
  for (uint32_t v : k.vars()) {
    h ^= v + 1;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

std::vector<SubsetKey> enumerate_subsets(uint32_t n, uint32_t max_size) {
  std::vector<SubsetKey> out;
  out.reserve(static_cast<size_t>(subset_count(n, max_size)));
  out.emplace_back();
  uint32_t cap = std::min(max_size, n);
  std::vector<uint32_t> comb;
  for (uint32_t s = 1; s <= cap; ++s) {
    comb.resize(s);
    for (uint32_t i = 0; i < s; ++i) comb[i] = i;
    for (;;) {
      out.emplace_back(comb);
      // advance to next combination in lex order
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && comb[static_cast<size_t>(i)] == n - s + static_cast<uint32_t>(i)) --i;
      if (i < 0) break;
      ++comb[static_cast<size_t>(i)];
      for (size_t j = static_cast<size_t>(i) + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

uint64_t binomial(uint32_t n, uint32_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t r = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

uint64_t subset_count(uint32_t n, uint32_t max_size) {
  uint64_t total = 0;
  for (uint32_t s = 0; s <= std::min(max_size, n); ++s) total += binomial(n, s);
  return total;
}

}  // namespace lasgap
