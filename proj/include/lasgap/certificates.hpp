#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "lasgap/gadgets.hpp"
#include "lasgap/gram.hpp"
#include "lasgap/poly.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/subset.hpp"
#include "lasgap/xor_lasserre.hpp"

namespace lasgap {

// Scalar type of a base solution's Gram entries: Rational for planted
// solutions, double for explicit numeric ones.
template <class Base>
using lift_scalar_t = std::remove_cvref_t<decltype(std::declval<const Base&>().gram_entry(0, 0))>;

// <W_a, W_b> for assigned sets of any size against a rank-1 planted base:
// 1 when the merged assignment is consistent and matches the planted point.
Rational label_inner(const PlantedXorSolution& base, const AssignedSet& a, const AssignedSet& b);

// Gram entry between two indexed assigned sets; throws std::out_of_range
// naming the label when either one is not covered by the base index.
double label_inner(const ExplicitXorSolution& base, const AssignedSet& a, const AssignedSet& b);

inline double scalar_to_double(const Rational& q) { return to_double(q); }
inline double scalar_to_double(double x) { return x; }

template <class Scalar>
Scalar scalar_from_rational(const Rational& q);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& q) {
  return q;
}
template <>
inline double scalar_from_rational<double>(const Rational& q) {
  return to_double(q);
}

// Vectors U_S for subsets S of gadget-graph vertices, represented implicitly:
// each subset maps to either the zero vector or a labelled vector of the base
// solution, so inner products reduce to base Gram entries. Holds non-owning
// views of the base and the host graph; both must outlive the lift.
template <class Base>
class ImplicitLiftedSolution {
 public:
  using Scalar = lift_scalar_t<Base>;

  ImplicitLiftedSolution(const Base& base, const GadgetGraph& host, uint32_t s)
      : base_(&base), host_(&host), s_(s) {
    if (base.r() < 3 * s) {
      throw std::invalid_argument("ImplicitLiftedSolution: base round " +
                                  std::to_string(base.r()) + " cannot cover subsets of size " +
                                  std::to_string(s) + " (needs at least 3x)");
    }
    if (base.n() != host.source.n) {
      throw std::invalid_argument("ImplicitLiftedSolution: base has " +
                                  std::to_string(base.n()) + " variables but the host instance has " +
                                  std::to_string(host.source.n));
    }
    for (const XorConstraint& c : host.source.constraints) {
      AssignedSet scope{SubsetKey({c.vars[0], c.vars[1], c.vars[2]}),
                        std::vector<uint8_t>(3, 0)};
      require_known(scope);
    }
  }

  const Base& base() const { return *base_; }
  const GadgetGraph& host() const { return *host_; }
  uint32_t limit() const { return s_; }

  // Label of U_S in the base Gram space; nullopt is the zero vector. Subsets
  // touching the expander block (or the right divider, for extended hosts)
  // map to zero, as do subsets whose members force contradictory bits.
  std::optional<AssignedSet> evaluate(const SubsetKey& s) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(s);
    if (it == cache_.end()) it = cache_.emplace(s, evaluate_uncached(s)).first;
    return it->second;
  }

  Scalar inner(const SubsetKey& a, const SubsetKey& b) const {
    auto ea = evaluate(a);
    auto eb = evaluate(b);
    if (!ea || !eb) return Scalar(0);
    return label_inner(*base_, *ea, *eb);
  }

  Scalar vertex_norm(uint32_t v) const {
    SubsetKey k = SubsetKey::singleton(v);
    return inner(k, k);
  }

  Scalar empty_norm() const { return label_inner(*base_, AssignedSet{}, AssignedSet{}); }

 private:
  std::optional<AssignedSet> evaluate_uncached(const SubsetKey& s) const {
    if (s.size() > s_) {
      throw std::invalid_argument("evaluate: subset of size " + std::to_string(s.size()) +
                                  " exceeds the lift limit " + std::to_string(s_));
    }
    AssignedSet acc;
    for (uint32_t v : s.vars()) {
      AssignedSet piece;
      VertexInfo info = host_->info(v);
      switch (info.role) {
        case VertexRole::zr:
        case VertexRole::dr:
          return std::nullopt;
        case VertexRole::dl:
          continue;
        case VertexRole::left: {
          const XorConstraint& c = host_->source.constraints.at(info.a);
          piece.set = SubsetKey({c.vars[0], c.vars[1], c.vars[2]});
          piece.bits = {static_cast<uint8_t>(info.b & 1u), static_cast<uint8_t>((info.b >> 1) & 1u),
                        static_cast<uint8_t>((info.b >> 2) & 1u)};
          break;
        }
        case VertexRole::clique:
          piece.set = SubsetKey::singleton(info.a);
          piece.bits = {static_cast<uint8_t>(info.b)};
          break;
      }
      MergedAssignment merged = merge_assigned(acc, piece);
      if (!merged.ok) return std::nullopt;
      acc = std::move(merged.merged);
    }
    return acc;
  }

  void require_known(const AssignedSet& a) const;

  const Base* base_;
  const GadgetGraph* host_;
  uint32_t s_;
  mutable std::mutex mu_;
  mutable std::map<SubsetKey, std::optional<AssignedSet>> cache_;
};

template <>
inline void ImplicitLiftedSolution<PlantedXorSolution>::require_known(const AssignedSet&) const {}

template <>
inline void ImplicitLiftedSolution<ExplicitXorSolution>::require_known(const AssignedSet& a) const {
  label_inner(*base_, a, a);
}

// Vectors for a separator-stage gadget graph: expander vertices map to zero,
// left vertices bind their constraint scope, clique vertices bind one bit.
template <class Base>
ImplicitLiftedSolution<Base> lift_bs_solution(const Base& base, const GadgetGraph& h, uint32_t s) {
  if (h.stage == GadgetStage::usc) {
    throw std::invalid_argument("lift_bs_solution: host carries divider blocks; use lift_usc_solution");
  }
  return ImplicitLiftedSolution<Base>(base, h, s);
}

// Extends a separator lift to a divider-augmented host: left-divider vertices
// act as U_empty, right-divider vertices as zero. The extended graph must have
// been built from the lift's host.
template <class Base>
ImplicitLiftedSolution<Base> lift_usc_solution(const ImplicitLiftedSolution<Base>& bs_sol,
                                               const GadgetGraph& u) {
  if (u.stage != GadgetStage::usc) {
    throw std::invalid_argument("lift_usc_solution: host has no divider blocks");
  }
  const GadgetGraph& h = bs_sol.host();
  if (u.source_id != h.source_id) {
    throw std::invalid_argument("lift_usc_solution: host was built from a different instance");
  }
  GadgetParams a = h.params;
  GadgetParams b = u.params;
  a.lambda = 0;
  b.lambda = 0;
  if (!(a == b)) {
    throw std::invalid_argument("lift_usc_solution: host parameters do not extend the lift's host");
  }
  std::vector<TaggedEdge> core;
  core.reserve(h.edges.size());
  for (const TaggedEdge& e : u.edges) {
    if (e.tag == EdgeTag::d_expander || e.tag == EdgeTag::d_link) continue;
    core.push_back(e);
  }
  if (core != h.edges) {
    throw std::invalid_argument("lift_usc_solution: host edges do not extend the lift's host");
  }
  return ImplicitLiftedSolution<Base>(bs_sol.base(), u, bs_sol.limit());
}

// Sum over edges of ||U_u - U_v||^2. Expander-internal edges contribute zero
// analytically (both endpoints constant) and are skipped; every other tag is
// evaluated from vertex labels.
template <class Base>
lift_scalar_t<Base> lifted_edge_sum(const ImplicitLiftedSolution<Base>& sol) {
  using Scalar = lift_scalar_t<Base>;
  const GadgetGraph& h = sol.host();
  const uint32_t nv = h.num_vertices();
  std::vector<std::optional<AssignedSet>> label(nv);
  std::vector<Scalar> norm(nv, Scalar(0));
  for (uint32_t v = 0; v < nv; ++v) {
    label[v] = sol.evaluate(SubsetKey::singleton(v));
    if (label[v]) norm[v] = label_inner(sol.base(), *label[v], *label[v]);
  }
  Scalar total(0);
  for (const TaggedEdge& e : h.edges) {
    if (e.tag == EdgeTag::zr_expander || e.tag == EdgeTag::d_expander) continue;
    Scalar g(0);
    if (label[e.u] && label[e.v]) g = label_inner(sol.base(), *label[e.u], *label[e.v]);
    total += norm[e.u] + norm[e.v] - g - g;
  }
  return total;
}

template <class Base>
lift_scalar_t<Base> bs_objective(const ImplicitLiftedSolution<Base>& sol) {
  if (sol.host().stage == GadgetStage::usc) {
    throw std::invalid_argument("bs_objective: host carries divider blocks; use usc_objective");
  }
  return lifted_edge_sum(sol);
}

template <class Scalar>
struct BalanceSummary {
  Scalar delta{};        // <sum_v U_v, U_empty>
  Scalar residual_sq{};  // ||sum_v U_v - delta U_empty||^2
  Scalar implied_tau{};  // delta / |V|
};

// Balance of the lifted solution via class counting: vertices sharing a label
// are grouped, so the pair sum runs over label classes instead of vertex
// pairs. Exact for rational bases.
template <class Base>
BalanceSummary<lift_scalar_t<Base>> balance_summary(const ImplicitLiftedSolution<Base>& sol) {
  using Scalar = lift_scalar_t<Base>;
  const GadgetGraph& h = sol.host();
  const uint32_t nv = h.num_vertices();
  std::map<AssignedSet, uint64_t> classes;
  for (uint32_t v = 0; v < nv; ++v) {
    auto l = sol.evaluate(SubsetKey::singleton(v));
    if (l) ++classes[*l];
  }
  const AssignedSet empty_label{};
  Scalar delta(0);
  for (const auto& [l, cnt] : classes) {
    delta += Scalar(cnt) * label_inner(sol.base(), l, empty_label);
  }
  Scalar pair_sum(0);
  for (const auto& [la, ca] : classes) {
    for (const auto& [lb, cb] : classes) {
      pair_sum += Scalar(ca) * Scalar(cb) * label_inner(sol.base(), la, lb);
    }
  }
  const Scalar n0 = sol.empty_norm();
  BalanceSummary<Scalar> out;
  out.delta = delta;
  out.residual_sq = pair_sum - delta * delta - delta * delta + delta * delta * n0;
  out.implied_tau = nv == 0 ? Scalar(0) : Scalar(delta / Scalar(nv));
  return out;
}

// Materializes U_S for the given subsets into explicit vectors. Subsets are
// put into (size, lex) order and deduplicated.
template <class Base>
GramSolution materialize_lift(const ImplicitLiftedSolution<Base>& sol,
                              std::vector<SubsetKey> subsets, double tol) {
  std::sort(subsets.begin(), subsets.end(), [](const SubsetKey& a, const SubsetKey& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.vars() < b.vars();
  });
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  const Eigen::Index n = static_cast<Eigen::Index>(subsets.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = scalar_to_double(sol.inner(subsets[static_cast<size_t>(i)],
                                                  subsets[static_cast<size_t>(j)]));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return gram_from_matrix(std::move(subsets), g, tol);
}

// The empty set plus every vertex singleton, the basis used for balance
// certification and feasibility spot-checks.
std::vector<SubsetKey> singleton_basis(const GadgetGraph& h);

// Balance certificate through the generic lift certifier: materializes the
// singleton vectors and checks sum_v U_v = delta U_empty.
template <class Base>
LiftCertificate bs_balance_residual(const ImplicitLiftedSolution<Base>& sol, double tol) {
  const GadgetGraph& h = sol.host();
  if (h.stage == GadgetStage::usc) {
    throw std::invalid_argument("bs_balance_residual: host carries divider blocks");
  }
  GramSolution g = materialize_lift(sol, singleton_basis(h), tol);
  MultilinearPoly q(h.num_vertices());
  for (uint32_t v = 0; v < h.num_vertices(); ++v) q.add_term(SubsetKey::singleton(v), Rational(1));
  return certify_lift(g, q, tol);
}

template <class Scalar>
struct UscObjective {
  Scalar raw{};          // sum over edges of ||U_u - U_v||^2
  Scalar scaled{};       // raw / (|V|^2 tau (1 - tau))
  Scalar square_bound{};  // raw / (tau |V|)^2, an upper bound on scaled
  Scalar delta{};        // balance mass
};

template <class Base>
UscObjective<lift_scalar_t<Base>> usc_objective(const ImplicitLiftedSolution<Base>& sol,
                                                const Rational& tau, double tau_tol = 1e-6) {
  using Scalar = lift_scalar_t<Base>;
  const GadgetGraph& h = sol.host();
  if (h.stage != GadgetStage::usc) {
    throw std::invalid_argument("usc_objective: host has no divider blocks");
  }
  BalanceSummary<Scalar> bal = balance_summary(sol);
  const double mismatch = scalar_to_double(bal.implied_tau) - to_double(tau);
  bool matches;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    matches = bal.implied_tau == tau;
  } else {
    matches = mismatch <= tau_tol && mismatch >= -tau_tol;
  }
  if (!matches) {
    throw std::invalid_argument("usc_objective: tau " + to_fraction_string(tau) +
                                " does not match the lifted balance fraction (off by " +
                                std::to_string(mismatch) + ")");
  }
  const uint32_t nv = h.num_vertices();
  UscObjective<Scalar> out;
  out.raw = lifted_edge_sum(sol);
  out.delta = bal.delta;
  const Scalar t = scalar_from_rational<Scalar>(tau);
  const Scalar size(nv);
  out.scaled = out.raw / (size * size * t * (Scalar(1) - t));
  out.square_bound = out.raw / (t * size * t * size);
  return out;
}

// ||sum over the constraint's four satisfying left vertices of U - U_empty||^2;
// zero for a perfect base, because the four assignments partition the event
// space of the scope.
template <class Base>
lift_scalar_t<Base> constraint_sum_residual_sq(const ImplicitLiftedSolution<Base>& sol,
                                               uint32_t constraint) {
  using Scalar = lift_scalar_t<Base>;
  const GadgetGraph& h = sol.host();
  if (constraint >= h.m()) {
    throw std::out_of_range("constraint_sum_residual_sq: constraint index out of range");
  }
  std::vector<std::optional<AssignedSet>> labels;
  for (uint32_t k = 0; k < 4; ++k) {
    labels.push_back(sol.evaluate(SubsetKey::singleton(h.left_id(constraint, k))));
  }
  const AssignedSet empty_label{};
  Scalar total = sol.empty_norm();
  for (const auto& a : labels) {
    if (!a) continue;
    const Scalar cross = label_inner(sol.base(), *a, empty_label);
    total -= cross + cross;
    for (const auto& b : labels) {
      if (b) total += label_inner(sol.base(), *a, *b);
    }
  }
  return total;
}

// One verified identity: expected value as an exact rational, observed value,
// and their difference, accepted when |residual| <= tol.
struct IdentityCheck {
  std::string name;
  std::string expected;
  std::string observed;
  std::string residual;
  bool accepted = false;
};

IdentityCheck make_identity_check(const std::string& name, const Rational& expected,
                                  const Rational& observed, double tol);
IdentityCheck make_identity_check(const std::string& name, const Rational& expected,
                                  double observed, double tol);

nlohmann::json identity_check_to_json(const IdentityCheck& c);
nlohmann::json identity_checks_to_json(const std::vector<IdentityCheck>& checks);
bool all_accepted(const std::vector<IdentityCheck>& checks);

// The separator-stage identities for a lift of a perfect base: edge sum 5m,
// balance mass (M+1)m with zero residual, balance fraction (M+1)/(2M+5), and
// unit empty norm. Requires an unreduced host.
template <class Base>
std::vector<IdentityCheck> check_bs_identities(const ImplicitLiftedSolution<Base>& sol,
                                               double tol = 0.0) {
  const GadgetGraph& h = sol.host();
  if (h.stage != GadgetStage::bs) {
    throw std::invalid_argument("check_bs_identities: identities hold on the unreduced stage only");
  }
  const uint64_t m = h.m();
  const uint64_t big = h.params.M;
  BalanceSummary<lift_scalar_t<Base>> bal = balance_summary(sol);
  std::vector<IdentityCheck> out;
  out.push_back(make_identity_check("bs-objective", Rational(5 * m), bs_objective(sol), tol));
  out.push_back(make_identity_check("bs-balance", Rational((big + 1) * m), bal.delta, tol));
  out.push_back(make_identity_check("bs-balance-residual-sq", Rational(0), bal.residual_sq, tol));
  out.push_back(make_identity_check("bs-balance-fraction", Rational(big + 1, 2 * big + 5),
                                    bal.implied_tau, tol));
  out.push_back(make_identity_check("empty-norm", Rational(1), sol.empty_norm(), tol));
  return out;
}

// The divider-stage identities: raw edge sum (2M+10)m independent of lambda,
// balance mass ((lambda+1)M+1)m with zero residual, and the scaled objective
// (2M+10)m / (((lambda+1)M+1)m ((lambda+1)M+4)m).
template <class Base>
std::vector<IdentityCheck> check_usc_identities(const ImplicitLiftedSolution<Base>& sol,
                                                double tol = 0.0) {
  const GadgetGraph& h = sol.host();
  if (h.stage != GadgetStage::usc) {
    throw std::invalid_argument("check_usc_identities: host has no divider blocks");
  }
  const uint64_t m = h.m();
  const uint64_t big = h.params.M;
  const uint64_t lam = h.params.lambda;
  const Rational mass((lam + 1) * big + 1);
  const Rational other((lam + 1) * big + 4);
  BalanceSummary<lift_scalar_t<Base>> bal = balance_summary(sol);
  const Rational tau = Rational(mass) / Rational((2 * lam + 2) * big + 5);
  std::vector<IdentityCheck> out;
  out.push_back(make_identity_check("usc-balance", mass * m, bal.delta, tol));
  out.push_back(make_identity_check("usc-balance-residual-sq", Rational(0), bal.residual_sq, tol));
  UscObjective<lift_scalar_t<Base>> obj = usc_objective(sol, tau, tol > 0 ? tol : 1e-6);
  out.push_back(make_identity_check("usc-objective-raw", Rational((2 * big + 10) * m), obj.raw, tol));
  out.push_back(make_identity_check(
      "usc-objective-scaled", Rational((2 * big + 10) * m) / (mass * m * other * m), obj.scaled, tol));
  out.push_back(make_identity_check("empty-norm", Rational(1), sol.empty_norm(), tol));
  return out;
}

}  // namespace lasgap
