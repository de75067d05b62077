#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lasgap/graph.hpp"
#include "lasgap/moments.hpp"
#include "lasgap/poly.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/sdp/problem.hpp"
#include "lasgap/sdp/solve.hpp"
#include "lasgap/subset.hpp"

namespace lasgap {

// Linear form over moment entries: sum_k coeff_k * y_k.
using MomentForm = std::map<SubsetKey, Rational>;

struct MomentEquality {
  MomentForm terms;
  Rational rhs;
  std::string label;
};

enum class BlockKind {
  moment,   // entry(S,T) = y_{S union T} over `basis`
  shifted,  // entry(S,T) = sum_U shift(U) * y_{S union T union U} over `basis`
  nonneg    // diagonal block, entry(k,k) = y_{keys[k]}; PSD means y_k >= 0
};

struct SymbolicBlock {
  BlockKind kind = BlockKind::moment;
  std::vector<SubsetKey> basis;  // moment/shifted
  MultilinearPoly shift;         // shifted only
  std::vector<SubsetKey> keys;   // nonneg only
  std::string name;

  int dim() const {
    return static_cast<int>(kind == BlockKind::nonneg ? keys.size() : basis.size());
  }
};

// Symbolic SDP over moment entries y_S, |S| <= 2r, with y_empty pinned to 1 at
// realization time.
struct LiftedSDP {
  uint32_t n = 0;
  uint32_t r = 0;
  Sense sense = Sense::minimize;
  std::vector<SymbolicBlock> blocks;
  std::vector<MomentEquality> equalities;
  MomentForm objective;

  std::string source;                 // human-readable origin
  std::optional<Rational> tau_prime;  // balance fraction when applicable
  uint32_t base_round_factor = 1;     // metadata for round bookkeeping

  void validate() const;
};

// Eq-form relaxation of a binary program: M(y) and M(Q*y) PSD, y_empty = 1,
// objective <P, y>. No nonnegativity block.
LiftedSDP build_lifted_sdp(const BinaryProgram& prog, uint32_t r);

// Adds rows (q*y)_S = 0 for all |S| <= 2r - deg(q); the moment shadow of the
// vector equation sum_S q(S) U_S = 0.
void add_moment_equalities(LiftedSDP& sdp, const MultilinearPoly& q,
                           const std::string& label_prefix);

// Balanced-separator relaxation family: one member per tau' = k/|V| inside
// [tau, 1-tau]. Objective = cut polynomial in moments; balance lifted to
// moment equalities; inner-product nonnegativity on all moment entries.
std::vector<std::pair<Rational, LiftedSDP>> build_psi1(const Graph& g, const Rational& tau,
                                                       uint32_t r);

// Uniform-sparsest-cut relaxation family: one member per tau = k/|V|,
// k = 1..floor(|V|/2); objective scaled by 1/(|V|^2 tau (1-tau)).
std::vector<std::pair<Rational, LiftedSDP>> build_psi2(const Graph& g, uint32_t r);

// Realize the symbolic SDP: canonical entry per moment key, tie rows for
// duplicate occurrences, definition rows for shifted entries, y_empty = 1.
sdp::SdpProblem to_sdp_problem(const LiftedSDP& sdp);

// Read the moment entries back out of a solved realization.
MomentVector extract_moments(const LiftedSDP& sdp, const sdp::SdpSolution& solution);

// Exact feasibility measurement of explicit moments against the symbolic SDP.
struct MomentFeasReport {
  Rational max_equality_violation{0};
  Rational min_nonneg{0};              // 0 when there is no nonneg block
  std::vector<double> block_min_eigs;  // one per moment/shifted block
  Rational objective{0};
  std::string worst_equality;

  bool feasible(double tol) const;
};

MomentFeasReport check_moments(const LiftedSDP& sdp, const MomentVector& y);

}  // namespace lasgap
