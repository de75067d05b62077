#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lasgap/gadgets.hpp"
#include "lasgap/graph.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/xor3.hpp"

namespace lasgap {

struct Cut {
  uint32_t num_vertices = 0;
  std::vector<uint8_t> side;  // 1 = side A, indexed by vertex

  Cut() = default;
  Cut(uint32_t n, const std::vector<uint32_t>& a);

  uint32_t size_a() const;
  std::vector<uint32_t> members() const;  // side-A indices, ascending

  bool operator==(const Cut&) const = default;
};

struct CutStats {
  uint64_t crossing = 0;
  uint32_t size_a = 0;
  uint32_t size_b = 0;
  Rational sparsity;  // crossing / (size_a * size_b)
  Rational balance;   // size_a / (size_a + size_b)
};

struct CutResult {
  Cut cut;
  CutStats stats;
};

enum class SearchMode : uint8_t { exact, local_search };

// Exact number of edges with one endpoint in A. A may be empty or full.
uint64_t cut_edges(const Graph& g, const Cut& a);

// Requires nontrivial A (both sides nonempty).
CutStats evaluate_cut(const Graph& g, const Cut& a);

// Minimum crossing count over ceil(tau*n) <= |A| <= floor((1-tau)*n), with
// tau in (0, 1/2]. Exact mode enumerates (|V| <= 26, ties to the
// lexicographically least side-A set); local search runs 64 seeded rounds of
// first-improvement cross-pair swap descent, so balance is preserved.
CutResult best_balanced_separator(const Graph& g, const Rational& tau, SearchMode mode,
                                  uint64_t seed = 0);

// Minimum sparsity crossing/(|A||B|) over all nontrivial cuts, compared as
// exact rationals. Local search adds single-vertex moves to the swap
// neighborhood since cardinality is unconstrained.
CutResult best_sparsest_cut(const Graph& g, SearchMode mode, uint64_t seed = 0);

// Literal ell = 2*variable + bit, over the instance behind h.
struct Lemma33Report {
  uint64_t deg = 0;        // sum of representative attachment degrees over L'
  uint64_t contained = 0;  // left vertices with all three literals inside L'
  bool meaningful = false;
  bool bound1_ok = false;
  bool bound2_ok = false;
};

// Measures the attachment degree and containment counts of literal set L'
// against h's attachment edges. The bound flags are descriptive; they are only
// meaningful for |L'| >= n/3 and carry asymptotic constants.
Lemma33Report check_lemma33(const Xor3Instance& inst, const GadgetGraph& h,
                            const std::vector<uint32_t>& literals);

struct SoundnessReference {
  Rational value;
  bool corrections_included = false;
};

// Leading term 4m(3tau - tau^3) of the integral lower bound; the subtracted
// correction terms carry unknown constants and are omitted, as flagged.
SoundnessReference bs_soundness_reference(const Rational& tau, uint32_t m);

// Exact gamma = (1 + 1/(100M)) * (2M+10)m / (1001Mm)^2.
SoundnessReference usc_soundness_reference(uint32_t M, uint32_t m);

nlohmann::json cut_to_json(const Cut& c);
Cut cut_from_json(const nlohmann::json& j);

std::string cut_stats_csv_header();
std::string cut_stats_csv_row(const CutStats& s);

}  // namespace lasgap
