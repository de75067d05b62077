#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lasgap/graph.hpp"
#include "lasgap/xor3.hpp"

namespace lasgap {

enum class VertexRole : uint8_t { left, clique, zr, dl, dr };

std::string role_to_string(VertexRole r);

// left:   a = constraint index, b = assignment mask over the sorted scope
//         (bit p is the value of the p-th scope variable)
// clique: a = variable, b = literal bit, c = copy number (1-based, 1 = representative)
// zr/dl/dr: a = index within the block
struct VertexInfo {
  VertexRole role = VertexRole::left;
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t c = 0;
};

enum class EdgeTag : uint8_t { clique, left_rep, left_zr, zr_expander, d_expander, d_link };

std::string tag_to_string(EdgeTag t);
EdgeTag tag_from_string(const std::string& s);

struct TaggedEdge {
  uint32_t u = 0;  // u < v
  uint32_t v = 0;
  EdgeTag tag = EdgeTag::clique;

  bool operator==(const TaggedEdge&) const = default;
  auto operator<=>(const TaggedEdge&) const = default;
};

struct GadgetParams {
  uint32_t n = 0;
  uint32_t beta = 0;
  uint32_t M = 0;
  uint32_t lambda = 0;  // 0 before the sparsest-cut augmentation
  uint32_t c = 16;      // expander degree factor
  uint64_t seed = 0;

  bool operator==(const GadgetParams&) const = default;
};

struct ExpanderCertificate {
  int size = 0;
  int degree = 0;
  std::string method;  // "bruteforce" (size <= 20), "spectral", or "estimate"
  double expansion = 0.0;
  double target = 0.0;
  bool certified = false;
  int attempts = 0;
};

struct ExpanderResult {
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // u < v, simple
  ExpanderCertificate certificate;
};

// Simple degree-regular graph on `size` vertices, configuration model with
// collision repair. Requires degree < size and degree*size even.
std::vector<std::pair<uint32_t, uint32_t>> random_regular_graph(uint32_t size, uint32_t degree,
                                                                Rng& rng);

// Lower bound on edge expansion: exact subset scan for size <= 20, dense
// (degree - lambda2)/2 for size <= 1024, power-iteration estimate above that
// (estimates are never marked certified).
ExpanderCertificate certify_expansion(const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                      uint32_t size, uint32_t degree, double target);

// Resamples until the certificate clears the target, with a complete-graph
// shortcut when degree = size - 1. Throws after max_attempts failures.
ExpanderResult build_expander(uint32_t size, uint32_t degree, double target, uint64_t seed,
                              int max_attempts = 20);

enum class GadgetStage : uint8_t { bs, bs_reduced, usc };

std::string stage_to_string(GadgetStage s);
GadgetStage stage_from_string(const std::string& s);

// Vertex layout, in id order:
//   left     [0, 4m)                  4 satisfying assignments per constraint
//   clique   [4m, 4m + 2n*M*beta)     (variable, bit, copy) lexicographic
//   zr       [.., +m)
//   dl, dr   [.., +lambda*M*m each)   usc stage only
struct GadgetGraph {
  GadgetParams params;
  GadgetStage stage = GadgetStage::bs;
  Xor3Instance source;
  std::string source_id;
  std::vector<TaggedEdge> edges;  // u < v, sorted, unique
  ExpanderCertificate zr_certificate;
  std::optional<ExpanderCertificate> dl_certificate;
  std::optional<ExpanderCertificate> dr_certificate;

  uint32_t m() const { return static_cast<uint32_t>(source.constraints.size()); }
  uint32_t clique_size() const { return params.M * params.beta; }
  uint32_t d_size() const { return params.lambda * params.M * m(); }

  uint32_t left_count() const { return 4 * m(); }
  uint32_t clique_count() const { return 2 * params.n * clique_size(); }
  uint32_t clique_base() const { return left_count(); }
  uint32_t zr_base() const { return left_count() + clique_count(); }
  uint32_t hphi_count() const { return zr_base() + m(); }
  uint32_t dl_base() const { return hphi_count(); }
  uint32_t dr_base() const { return hphi_count() + d_size(); }
  uint32_t num_vertices() const {
    return hphi_count() + (stage == GadgetStage::usc ? 2 * d_size() : 0);
  }

  uint32_t left_id(uint32_t i, uint32_t k) const { return 4 * i + k; }
  uint32_t clique_id(uint32_t j, uint32_t bit, uint32_t t) const {
    return clique_base() + (j * 2 + bit) * clique_size() + (t - 1);
  }
  uint32_t zr_id(uint32_t z) const { return zr_base() + z; }
  uint32_t dl_id(uint32_t idx) const { return dl_base() + idx; }
  uint32_t dr_id(uint32_t idx) const { return dr_base() + idx; }

  VertexInfo info(uint32_t v) const;
};

// The four scope-assignment masks satisfying the constraint, ascending.
std::vector<uint8_t> satisfying_masks(const XorConstraint& c);

// H_Phi: per-constraint left vertices, two literal cliques per variable,
// an attachment layer into Z_r, and a certified expander inside Z_r.
GadgetGraph build_bs_instance(const Xor3Instance& inst, const GadgetParams& params);

struct DegreeReduction {
  GadgetGraph reduced;
  std::vector<TaggedEdge> removed;
  uint64_t Y = 0;  // unordered left-rep edge pairs sharing a representative
};

// Drops every left-rep edge whose representative's left-rep degree exceeds
// beta*M + 1, judged against the pre-reduction degrees in one pass.
DegreeReduction reduce_degree(const GadgetGraph& h);

// Appends D_l and D_r (lambda*M*m vertices each, internally cM-regular) and
// one link from every H vertex into each side. Certification failures are
// recorded on the certificates, not fatal.
GadgetGraph build_usc_instance(const GadgetGraph& h, uint32_t lambda,
                               std::optional<double> expansion_target = std::nullopt);

struct AuditReport {
  bool ok = true;
  std::vector<std::string> failures;
  uint64_t vertex_count = 0;
  uint64_t edge_count = 0;

  void fail(std::string msg);
};

// Recomputes every structural invariant of the construction from the edge
// list alone: block cardinalities, per-role degrees, attachment regularity,
// clique completeness, link injectivity, and simplicity.
AuditReport audit_gadget(const GadgetGraph& g);

nlohmann::json certificate_to_json(const ExpanderCertificate& c);
ExpanderCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json gadget_to_json(const GadgetGraph& g);
GadgetGraph gadget_from_json(const nlohmann::json& j);

// Flat "u v" lines with role-table header comments, for external partitioners.
void export_edge_list(const GadgetGraph& g, std::ostream& out);

// Forgets roles and tags; vertex ids are preserved.
Graph to_simple_graph(const GadgetGraph& g);

}  // namespace lasgap
