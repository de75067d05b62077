#include "lasgap/certificates.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lasgap {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

size_t index_position(const ExplicitXorSolution& base, const AssignedSet& a) {
  const auto& index = base.index();
  auto it = std::lower_bound(index.begin(), index.end(), a);
  if (it == index.end() || *it != a) {
    throw std::out_of_range("label_inner: base index does not cover " + a.to_string());
  }
  return static_cast<size_t>(it - index.begin());
}

}  // namespace

Rational label_inner(const PlantedXorSolution& base, const AssignedSet& a, const AssignedSet& b) {
  MergedAssignment merged = merge_assigned(a, b);
  if (!merged.ok) return Rational(0);
  const std::vector<uint8_t>& planted = base.planted();
  const auto& vars = merged.merged.set.vars();
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] >= planted.size()) {
      throw std::out_of_range("label_inner: variable " + std::to_string(vars[i]) +
                              " outside the planted assignment");
    }
    if (planted[vars[i]] != merged.merged.bits[i]) return Rational(0);
  }
  return Rational(1);
}

double label_inner(const ExplicitXorSolution& base, const AssignedSet& a, const AssignedSet& b) {
  return base.gram_entry(index_position(base, a), index_position(base, b));
}

std::vector<SubsetKey> singleton_basis(const GadgetGraph& h) {
  std::vector<SubsetKey> basis;
  basis.reserve(h.num_vertices() + 1);
  basis.push_back(SubsetKey::empty_set());
  for (uint32_t v = 0; v < h.num_vertices(); ++v) basis.push_back(SubsetKey::singleton(v));
  return basis;
}

IdentityCheck make_identity_check(const std::string& name, const Rational& expected,
                                  const Rational& observed, double tol) {
  IdentityCheck c;
  c.name = name;
  c.expected = to_fraction_string(expected);
  c.observed = to_fraction_string(observed);
  const Rational diff = observed - expected;
  const Rational mag = diff < 0 ? Rational(-diff) : diff;
  c.residual = to_fraction_string(diff);
  c.accepted = mag == 0 || (tol > 0 && to_double(mag) <= tol);
  return c;
}

IdentityCheck make_identity_check(const std::string& name, const Rational& expected,
                                  double observed, double tol) {
  IdentityCheck c;
  c.name = name;
  c.expected = to_fraction_string(expected);
  c.observed = format_double(observed);
  const double diff = observed - to_double(expected);
  c.residual = format_double(diff);
  c.accepted = diff <= tol && diff >= -tol;
  return c;
}

nlohmann::json identity_check_to_json(const IdentityCheck& c) {
  return nlohmann::json{{"identity", c.name},
                        {"expected", c.expected},
                        {"observed", c.observed},
                        {"residual", c.residual},
                        {"accepted", c.accepted}};
}

nlohmann::json identity_checks_to_json(const std::vector<IdentityCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IdentityCheck& c : checks) arr.push_back(identity_check_to_json(c));
  return arr;
}

bool all_accepted(const std::vector<IdentityCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.accepted; });
}

}  // namespace lasgap
