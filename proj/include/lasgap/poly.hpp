#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lasgap/rational.hpp"
#include "lasgap/subset.hpp"

namespace lasgap {

// Multilinear polynomial over binary variables x_0..x_{n-1}, stored as a
// canonical coefficient map (no zero coefficients, keys sorted (size, lex)).
class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  explicit MultilinearPoly(uint32_t n) : n_(n) {}

  static MultilinearPoly constant(uint32_t n, Rational c);
  static MultilinearPoly variable(uint32_t n, uint32_t v);

  // Sum over edges of (x_u + x_v - 2 x_u x_v); counts crossing edges of a cut.
  static MultilinearPoly cut_polynomial(uint32_t n,
                                        const std::vector<std::pair<uint32_t, uint32_t>>& edges);

  // sum_v x_v - c
  static MultilinearPoly balance_polynomial(uint32_t n, const Rational& c);

  uint32_t n() const { return n_; }
  const std::map<SubsetKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  uint32_t degree() const;  // 0 for the zero polynomial
  Rational coeff(const SubsetKey& k) const;

  void add_term(const SubsetKey& k, const Rational& c);
  MultilinearPoly& operator+=(const MultilinearPoly& other);
  MultilinearPoly& operator-=(const MultilinearPoly& other);
  MultilinearPoly& operator*=(const Rational& c);

  // Product with idempotent reduction x_i^2 = x_i.
  MultilinearPoly multiply(const MultilinearPoly& other) const;

  bool operator==(const MultilinearPoly& other) const = default;

  std::string to_string() const;

 private:
  uint32_t n_ = 0;
  std::map<SubsetKey, Rational> terms_;
};

MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b);
MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b);

// Constrained to an exact Rational operand so that unrelated types (for
// example Eigen expression templates) are never probed for convertibility.
template <class S>
  requires std::same_as<std::remove_cvref_t<S>, Rational>
MultilinearPoly operator*(const S& c, MultilinearPoly p) {
  p *= c;
  return p;
}

// Evaluate at a 0/1 point; x.size() must equal p.n().
Rational eval_poly(const MultilinearPoly& p, const std::vector<uint8_t>& x);

enum class Sense { minimize, maximize };

std::string sense_to_string(Sense s);
Sense sense_from_string(const std::string& s);

// Binary polynomial program: optimize P(x) subject to Q(x) >= 0 over x in {0,1}^n.
struct BinaryProgram {
  uint32_t n = 0;
  MultilinearPoly objective;
  MultilinearPoly constraint;
  Sense sense = Sense::minimize;

  void validate() const;  // throws on mismatched n
};

nlohmann::json poly_to_json(const MultilinearPoly& p);
MultilinearPoly poly_from_json(const nlohmann::json& j);

nlohmann::json program_to_json(const BinaryProgram& bp);
BinaryProgram program_from_json(const nlohmann::json& j);

}  // namespace lasgap
