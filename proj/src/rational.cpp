#include "lasgap/rational.hpp"

#include <cctype>

namespace lasgap {

std::string to_fraction_string(const Rational& q) {
  BigInt n = num(q);
  BigInt d = den(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_integer_token(text)) return std::nullopt;
      return Rational(BigInt(text));
    }
    std::string ns = text.substr(0, slash);
    std::string ds = text.substr(slash + 1);
    if (!is_integer_token(ns) || !is_integer_token(ds)) return std::nullopt;
    BigInt n(ns), d(ds);
    if (d == 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

BigInt floor_big(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

BigInt ceil_big(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt t = n / d;
  if (n > 0 && t * d != n) ++t;
  return t;
}

long long floor_ll(const Rational& q) {
  return floor_big(q).convert_to<long long>();
}

long long ceil_ll(const Rational& q) {
  return ceil_big(q).convert_to<long long>();
}

}  // namespace lasgap
