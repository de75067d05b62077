#include "lasgap/poly.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lasgap {

MultilinearPoly MultilinearPoly::constant(uint32_t n, Rational c) {
  MultilinearPoly p(n);
  p.add_term(SubsetKey::empty_set(), c);
  return p;
}

MultilinearPoly MultilinearPoly::variable(uint32_t n, uint32_t v) {
  if (v >= n) throw std::out_of_range("MultilinearPoly::variable: index out of range");
  MultilinearPoly p(n);
  p.add_term(SubsetKey::singleton(v), Rational(1));
  return p;
}

MultilinearPoly MultilinearPoly::cut_polynomial(
    uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  MultilinearPoly p(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("cut_polynomial: vertex out of range");
    if (u == v) throw std::invalid_argument("cut_polynomial: self-loop");
    p.add_term(SubsetKey::singleton(u), Rational(1));
    p.add_term(SubsetKey::singleton(v), Rational(1));
    p.add_term(SubsetKey::singleton(u).with(v), Rational(-2));
  }
  return p;
}

MultilinearPoly MultilinearPoly::balance_polynomial(uint32_t n, const Rational& c) {
  MultilinearPoly p(n);
  for (uint32_t v = 0; v < n; ++v) p.add_term(SubsetKey::singleton(v), Rational(1));
  p.add_term(SubsetKey::empty_set(), -c);
  return p;
}

uint32_t MultilinearPoly::degree() const {
  if (terms_.empty()) return 0;
  return static_cast<uint32_t>(terms_.rbegin()->first.size());
}

Rational MultilinearPoly::coeff(const SubsetKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultilinearPoly::add_term(const SubsetKey& k, const Rational& c) {
  if (c == 0) return;
  if (!k.empty() && k.max_var() >= n_) {
    throw std::out_of_range("MultilinearPoly::add_term: variable out of range");
  }
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& other) {
  if (n_ != other.n_) throw std::invalid_argument("poly add: mismatched variable counts");
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator-=(const MultilinearPoly& other) {
  if (n_ != other.n_) throw std::invalid_argument("poly sub: mismatched variable counts");
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

MultilinearPoly MultilinearPoly::multiply(const MultilinearPoly& other) const {
  if (n_ != other.n_) throw std::invalid_argument("poly multiply: mismatched variable counts");
  MultilinearPoly out(n_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      out.add_term(ka.union_with(kb), ca * cb);
    }
  }
  return out;
}

MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) {
  a += b;
  return a;
}

MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) {
  a -= b;
  return a;
}


std::string MultilinearPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += to_fraction_string(c);
    if (!k.empty()) s += "*x" + k.to_string();
  }
  return s;
}

Rational eval_poly(const MultilinearPoly& p, const std::vector<uint8_t>& x) {
  if (x.size() != p.n()) throw std::invalid_argument("eval_poly: point has wrong dimension");
  Rational total(0);
  for (const auto& [k, c] : p.terms()) {
    bool all_one = true;
    for (uint32_t v : k.vars()) {
      if (x[v] == 0) {
        all_one = false;
        break;
      }
    }
    if (all_one) total += c;
  }
  return total;
}

std::string sense_to_string(Sense s) {
  return s == Sense::minimize ? "min" : "max";
}

Sense sense_from_string(const std::string& s) {
  if (s == "min") return Sense::minimize;
  if (s == "max") return Sense::maximize;
  throw std::invalid_argument("unknown sense: " + s);
}

void BinaryProgram::validate() const {
  if (objective.n() != n || constraint.n() != n) {
    throw std::invalid_argument("BinaryProgram: polynomial variable counts do not match n");
  }
}

nlohmann::json poly_to_json(const MultilinearPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : p.terms()) {
    terms.push_back({{"vars", k.vars()}, {"coeff", to_fraction_string(c)}});
  }
  return {{"n", p.n()}, {"terms", std::move(terms)}};
}

MultilinearPoly poly_from_json(const nlohmann::json& j) {
  uint32_t n = j.at("n").get<uint32_t>();
  MultilinearPoly p(n);
  for (const auto& t : j.at("terms")) {
    auto vars = t.at("vars").get<std::vector<uint32_t>>();
    Rational c = parse_fraction_or_throw(t.at("coeff").get<std::string>());
    p.add_term(SubsetKey::canonical(std::move(vars), n), c);
  }
  return p;
}

nlohmann::json program_to_json(const BinaryProgram& bp) {
  return {{"n", bp.n},
          {"objective", poly_to_json(bp.objective)},
          {"constraint", poly_to_json(bp.constraint)},
          {"sense", sense_to_string(bp.sense)}};
}

BinaryProgram program_from_json(const nlohmann::json& j) {
  BinaryProgram bp;
  bp.n = j.at("n").get<uint32_t>();
  bp.objective = poly_from_json(j.at("objective"));
  bp.constraint = poly_from_json(j.at("constraint"));
  bp.sense = sense_from_string(j.at("sense").get<std::string>());
  bp.validate();
  return bp;
}

}  // namespace lasgap
