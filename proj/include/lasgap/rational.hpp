#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace lasgap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Serialized as "num/den" with den > 0, or plain "num" when den == 1.
std::string to_fraction_string(const Rational& q);

// Accepts "num", "num/den", optional leading '-'. Rejects den == 0 and junk.
std::optional<Rational> parse_fraction(const std::string& text);

inline Rational parse_fraction_or_throw(const std::string& text) {
  auto q = parse_fraction(text);
  if (!q) throw std::invalid_argument("bad rational literal: " + text);
  return *q;
}

// Exact floor/ceil to BigInt, and checked conversion to long long.
BigInt floor_big(const Rational& q);
BigInt ceil_big(const Rational& q);
long long floor_ll(const Rational& q);
long long ceil_ll(const Rational& q);

}  // namespace lasgap
