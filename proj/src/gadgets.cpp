#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lasgap/artifact.hpp"
#include "lasgap/gadgets.hpp"
#include "lasgap/prng.hpp"

namespace lasgap {

namespace {

struct DerivedSeeds {
  uint64_t attach = 0;
  uint64_t zr_expander = 0;
  uint64_t dl = 0;
  uint64_t dr = 0;
};

DerivedSeeds derive_seeds(uint64_t seed) {
  Rng master(seed);
  DerivedSeeds s;
  s.attach = master.next_u64();
  s.zr_expander = master.next_u64();
  s.dl = master.next_u64();
  s.dr = master.next_u64();
  return s;
}

uint32_t select_degree(uint32_t size, uint32_t want) {
  uint32_t deg = std::min(want, size == 0 ? 0 : size - 1);
  if (deg > 0 && (static_cast<uint64_t>(deg) * size) % 2 != 0) --deg;
  return deg;
}

std::vector<std::pair<uint32_t, uint32_t>> complete_graph_edges(uint32_t size) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(static_cast<size_t>(size) * (size - 1) / 2);
  for (uint32_t u = 0; u < size; ++u)
    for (uint32_t v = u + 1; v < size; ++v) edges.emplace_back(u, v);
  return edges;
}

ExpanderCertificate complete_graph_certificate(uint32_t size, uint32_t degree, double target) {
  ExpanderCertificate cert;
  cert.size = static_cast<int>(size);
  cert.degree = static_cast<int>(degree);
  cert.method = "complete";
  cert.expansion = static_cast<double>((size + 1) / 2);
  cert.target = target;
  cert.certified = cert.expansion >= target;
  cert.attempts = 1;
  return cert;
}

}  // namespace

std::string role_to_string(VertexRole r) {
  switch (r) {
    case VertexRole::left: return "left";
    case VertexRole::clique: return "clique";
    case VertexRole::zr: return "zr";
    case VertexRole::dl: return "dl";
    case VertexRole::dr: return "dr";
  }
  throw std::logic_error("role_to_string: unknown role");
}

std::string tag_to_string(EdgeTag t) {
  switch (t) {
    case EdgeTag::clique: return "clique";
    case EdgeTag::left_rep: return "left-rep";
    case EdgeTag::left_zr: return "left-zr";
    case EdgeTag::zr_expander: return "zr-expander";
    case EdgeTag::d_expander: return "d-expander";
    case EdgeTag::d_link: return "d-link";
  }
  throw std::logic_error("tag_to_string: unknown tag");
}

EdgeTag tag_from_string(const std::string& s) {
  if (s == "clique") return EdgeTag::clique;
  if (s == "left-rep") return EdgeTag::left_rep;
  if (s == "left-zr") return EdgeTag::left_zr;
  if (s == "zr-expander") return EdgeTag::zr_expander;
  if (s == "d-expander") return EdgeTag::d_expander;
  if (s == "d-link") return EdgeTag::d_link;
  throw std::invalid_argument("tag_from_string: unknown tag '" + s + "'");
}

std::string stage_to_string(GadgetStage s) {
  switch (s) {
    case GadgetStage::bs: return "bs";
    case GadgetStage::bs_reduced: return "bs-reduced";
    case GadgetStage::usc: return "usc";
  }
  throw std::logic_error("stage_to_string: unknown stage");
}

GadgetStage stage_from_string(const std::string& s) {
  if (s == "bs") return GadgetStage::bs;
  if (s == "bs-reduced") return GadgetStage::bs_reduced;
  if (s == "usc") return GadgetStage::usc;
  throw std::invalid_argument("stage_from_string: unknown stage '" + s + "'");
}

std::vector<uint8_t> satisfying_masks(const XorConstraint& c) {
  std::vector<uint8_t> masks;
  masks.reserve(4);
  for (uint8_t mask = 0; mask < 8; ++mask) {
    uint8_t parity = (mask ^ (mask >> 1) ^ (mask >> 2)) & 1;
    if (parity == c.b) masks.push_back(mask);
  }
  return masks;
}

VertexInfo GadgetGraph::info(uint32_t v) const {
  if (v < left_count()) {
    const uint32_t i = v / 4;
    const uint32_t k = v % 4;
    return {VertexRole::left, i, satisfying_masks(source.constraints[i])[k], 0};
  }
  if (v < zr_base()) {
    const uint32_t off = v - clique_base();
    const uint32_t s = clique_size();
    const uint32_t jb = off / s;
    return {VertexRole::clique, jb / 2, jb % 2, off % s + 1};
  }
  if (v < hphi_count()) return {VertexRole::zr, v - zr_base(), 0, 0};
  if (stage == GadgetStage::usc && v < dr_base()) return {VertexRole::dl, v - dl_base(), 0, 0};
  if (stage == GadgetStage::usc && v < num_vertices()) return {VertexRole::dr, v - dr_base(), 0, 0};
  throw std::out_of_range("GadgetGraph::info: vertex " + std::to_string(v) + " out of range");
}

GadgetGraph build_bs_instance(const Xor3Instance& inst, const GadgetParams& params) {
  inst.validate();
  if (params.n != inst.n)
    throw std::invalid_argument("build_bs_instance: params.n differs from the instance");
  if (params.beta == 0 || params.M == 0)
    throw std::invalid_argument("build_bs_instance: beta and M must be positive");
  const uint32_t m = inst.m();
  if (m != params.beta * params.n)
    throw std::invalid_argument("build_bs_instance: constraint count must equal beta*n");
  if (m < 2)
    throw std::invalid_argument("build_bs_instance: attachment pairing needs at least 2 constraints");

  GadgetGraph g;
  g.params = params;
  g.params.lambda = 0;
  g.stage = GadgetStage::bs;
  g.source = inst;
  g.source_id = content_id(instance_to_json(inst));

  const DerivedSeeds seeds = derive_seeds(params.seed);
  const uint32_t s = g.clique_size();

  for (uint32_t j = 0; j < params.n; ++j)
    for (uint32_t bit = 0; bit < 2; ++bit)
      for (uint32_t t1 = 1; t1 <= s; ++t1)
        for (uint32_t t2 = t1 + 1; t2 <= s; ++t2)
          g.edges.push_back({g.clique_id(j, bit, t1), g.clique_id(j, bit, t2), EdgeTag::clique});

  for (uint32_t i = 0; i < m; ++i) {
    const XorConstraint& c = inst.constraints[i];
    const std::vector<uint8_t> masks = satisfying_masks(c);
    for (uint32_t k = 0; k < 4; ++k)
      for (uint32_t p = 0; p < 3; ++p) {
        const uint32_t bit = (masks[k] >> p) & 1;
        g.edges.push_back({g.left_id(i, k), g.clique_id(c.vars[p], bit, 1), EdgeTag::left_rep});
      }
  }

  {
    Rng rng(seeds.attach);
    std::vector<uint32_t> stubs;
    stubs.reserve(8 * static_cast<size_t>(m));
    for (uint32_t z = 0; z < m; ++z)
      for (int k = 0; k < 8; ++k) stubs.push_back(z);
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      rng.shuffle(stubs);
      ok = true;
      for (size_t q = 0; q < stubs.size(); q += 2)
        if (stubs[q] == stubs[q + 1]) {
          ok = false;
          break;
        }
    }
    if (!ok)
      throw std::runtime_error("build_bs_instance: no self-loop-free attachment pairing found");
    std::vector<std::pair<uint32_t, uint32_t>> pairs(4 * static_cast<size_t>(m));
    for (size_t q = 0; q < pairs.size(); ++q) {
      uint32_t a = stubs[2 * q];
      uint32_t b = stubs[2 * q + 1];
      if (a > b) std::swap(a, b);
      pairs[q] = {a, b};
    }
    std::sort(pairs.begin(), pairs.end());
    for (uint32_t q = 0; q < pairs.size(); ++q) {
      g.edges.push_back({q, g.zr_id(pairs[q].first), EdgeTag::left_zr});
      g.edges.push_back({q, g.zr_id(pairs[q].second), EdgeTag::left_zr});
    }
  }

  const uint32_t deg = select_degree(m, params.c * params.M);
  ExpanderResult ex =
      build_expander(m, deg, static_cast<double>(params.M), seeds.zr_expander);
  for (const auto& [a, b] : ex.edges)
    g.edges.push_back({g.zr_id(a), g.zr_id(b), EdgeTag::zr_expander});
  g.zr_certificate = ex.certificate;

  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

DegreeReduction reduce_degree(const GadgetGraph& h) {
  if (h.stage != GadgetStage::bs)
    throw std::invalid_argument("reduce_degree: expects an unreduced balanced-separator instance");
  std::vector<uint32_t> rep_degree(h.num_vertices(), 0);
  for (const TaggedEdge& e : h.edges)
    if (e.tag == EdgeTag::left_rep) ++rep_degree[e.v];

  uint64_t y = 0;
  for (uint64_t d : rep_degree)
    if (d >= 2) y += d * (d - 1) / 2;

  const uint32_t threshold = h.params.beta * h.params.M + 1;
  DegreeReduction out;
  out.Y = y;
  out.reduced = h;
  out.reduced.stage = GadgetStage::bs_reduced;
  out.reduced.edges.clear();
  out.reduced.edges.reserve(h.edges.size());
  for (const TaggedEdge& e : h.edges) {
    if (e.tag == EdgeTag::left_rep && rep_degree[e.v] > threshold)
      out.removed.push_back(e);
    else
      out.reduced.edges.push_back(e);
  }
  return out;
}

GadgetGraph build_usc_instance(const GadgetGraph& h, uint32_t lambda,
                               std::optional<double> expansion_target) {
  if (h.stage == GadgetStage::usc)
    throw std::invalid_argument("build_usc_instance: input already carries the D blocks");
  if (lambda == 0) throw std::invalid_argument("build_usc_instance: lambda must be positive");
  const uint32_t m = h.m();
  const uint64_t d_size64 = static_cast<uint64_t>(lambda) * h.params.M * m;
  if (d_size64 < h.hphi_count())
    throw std::invalid_argument(
        "build_usc_instance: lambda*M*m must cover the base vertex count for injective links");

  GadgetGraph g = h;
  g.stage = GadgetStage::usc;
  g.params.lambda = lambda;

  const DerivedSeeds seeds = derive_seeds(g.params.seed);
  const uint32_t size = static_cast<uint32_t>(d_size64);
  const uint32_t deg = select_degree(size, g.params.c * g.params.M);
  const double target = expansion_target.value_or(1e4 * g.params.M);

  auto build_side = [&](uint64_t seed, uint32_t base) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    ExpanderCertificate cert;
    if (deg + 1 == size) {
      edges = complete_graph_edges(size);
      cert = complete_graph_certificate(size, deg, target);
    } else {
      Rng rng(seed);
      edges = random_regular_graph(size, deg, rng);
      cert = certify_expansion(edges, size, deg, target);
      cert.attempts = 1;
    }
    for (const auto& [a, b] : edges) g.edges.push_back({base + a, base + b, EdgeTag::d_expander});
    return cert;
  };
  g.dl_certificate = build_side(seeds.dl, g.dl_base());
  g.dr_certificate = build_side(seeds.dr, g.dr_base());

  for (uint32_t v = 0; v < g.hphi_count(); ++v) {
    g.edges.push_back({v, g.dl_id(v), EdgeTag::d_link});
    g.edges.push_back({v, g.dr_id(v), EdgeTag::d_link});
  }

  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

void AuditReport::fail(std::string msg) {
  ok = false;
  failures.push_back(std::move(msg));
}

AuditReport audit_gadget(const GadgetGraph& g) {
  AuditReport report;
  const uint32_t nv = g.num_vertices();
  const uint32_t m = g.m();
  const uint32_t s = g.clique_size();
  report.vertex_count = nv;
  report.edge_count = g.edges.size();

  if (m != g.params.beta * g.params.n)
    report.fail("constraint count does not equal beta*n");
  if (g.hphi_count() != (2 * g.params.M + 5) * static_cast<uint64_t>(m))
    report.fail("base vertex count differs from (2M+5)m");
  if (g.stage == GadgetStage::usc &&
      nv != (2 * (static_cast<uint64_t>(g.params.lambda) + 1) * g.params.M + 5) * m)
    report.fail("augmented vertex count differs from ((2lambda+2)M+5)m");

  constexpr int kTagCount = 6;
  std::vector<std::array<uint32_t, kTagCount>> deg(nv, std::array<uint32_t, kTagCount>{});
  std::vector<int64_t> left_zr_first(g.left_count(), -1);

  const TaggedEdge* prev = nullptr;
  for (const TaggedEdge& e : g.edges) {
    if (e.u >= e.v) {
      report.fail("edge endpoints not strictly increasing");
      continue;
    }
    if (e.v >= nv) {
      report.fail("edge endpoint out of range");
      continue;
    }
    if (prev != nullptr) {
      if (!(*prev < e)) report.fail("edge list not sorted");
      if (prev->u == e.u && prev->v == e.v) report.fail("duplicate edge between a vertex pair");
    }
    prev = &e;
    const int t = static_cast<int>(e.tag);
    ++deg[e.u][t];
    ++deg[e.v][t];

    const VertexInfo iu = g.info(e.u);
    const VertexInfo iv = g.info(e.v);
    switch (e.tag) {
      case EdgeTag::clique:
        if (iu.role != VertexRole::clique || iv.role != VertexRole::clique ||
            iu.a != iv.a || iu.b != iv.b)
          report.fail("clique edge leaves its literal block");
        break;
      case EdgeTag::left_rep: {
        if (iu.role != VertexRole::left || iv.role != VertexRole::clique || iv.c != 1) {
          report.fail("attachment edge endpoints have wrong roles");
          break;
        }
        const XorConstraint& c = g.source.constraints[iu.a];
        bool consistent = false;
        for (uint32_t p = 0; p < 3; ++p)
          if (c.vars[p] == iv.a && ((iu.b >> p) & 1) == iv.b) consistent = true;
        if (!consistent) report.fail("representative edge inconsistent with its assignment");
        break;
      }
      case EdgeTag::left_zr: {
        if (iu.role != VertexRole::left || iv.role != VertexRole::zr) {
          report.fail("attachment edge endpoints have wrong roles");
          break;
        }
        int64_t& first = left_zr_first[e.u];
        if (first == static_cast<int64_t>(e.v))
          report.fail("left vertex attached twice to the same anchor");
        if (first < 0) first = static_cast<int64_t>(e.v);
        break;
      }
      case EdgeTag::zr_expander:
        if (iu.role != VertexRole::zr || iv.role != VertexRole::zr)
          report.fail("anchor expander edge leaves the anchor block");
        break;
      case EdgeTag::d_expander:
        if (iu.role != iv.role || (iu.role != VertexRole::dl && iu.role != VertexRole::dr))
          report.fail("augmentation expander edge crosses blocks");
        break;
      case EdgeTag::d_link:
        if (e.u >= g.hphi_count() ||
            (iv.role != VertexRole::dl && iv.role != VertexRole::dr))
          report.fail("link edge does not join the base graph to an augmentation block");
        break;
    }
  }

  const auto tag_deg = [&](uint32_t v, EdgeTag t) { return deg[v][static_cast<int>(t)]; };

  for (uint32_t v = 0; v < g.left_count(); ++v) {
    const uint32_t rep = tag_deg(v, EdgeTag::left_rep);
    if (g.stage == GadgetStage::bs ? rep != 3 : rep > 3)
      report.fail("left vertex " + std::to_string(v) + " has representative degree " +
                  std::to_string(rep));
    if (tag_deg(v, EdgeTag::left_zr) != 2)
      report.fail("left vertex " + std::to_string(v) + " lacks two anchor edges");
  }
  for (uint32_t z = 0; z < m; ++z) {
    const uint32_t v = g.zr_id(z);
    if (tag_deg(v, EdgeTag::left_zr) != 8)
      report.fail("anchor vertex " + std::to_string(z) + " has attachment degree " +
                  std::to_string(tag_deg(v, EdgeTag::left_zr)));
    if (static_cast<int>(tag_deg(v, EdgeTag::zr_expander)) != g.zr_certificate.degree)
      report.fail("anchor vertex " + std::to_string(z) + " breaks expander regularity");
  }

  std::vector<uint32_t> clique_internal(2 * static_cast<size_t>(g.params.n), 0);
  for (const TaggedEdge& e : g.edges)
    if (e.tag == EdgeTag::clique) {
      const VertexInfo iu = g.info(e.u);
      ++clique_internal[iu.a * 2 + iu.b];
    }
  for (size_t jb = 0; jb < clique_internal.size(); ++jb)
    if (clique_internal[jb] != static_cast<uint64_t>(s) * (s - 1) / 2)
      report.fail("literal block " + std::to_string(jb) + " is not a complete clique");

  if (g.stage == GadgetStage::bs_reduced) {
    const uint32_t cap = g.params.beta * g.params.M + 1;
    for (uint32_t j = 0; j < g.params.n; ++j)
      for (uint32_t bit = 0; bit < 2; ++bit) {
        const uint32_t v = g.clique_id(j, bit, 1);
        if (tag_deg(v, EdgeTag::left_rep) > cap)
          report.fail("representative " + std::to_string(v) +
                      " keeps degree above beta*M+1 after reduction");
      }
  }

  if (g.stage == GadgetStage::usc) {
    std::vector<uint32_t> links_dl(g.hphi_count(), 0);
    std::vector<uint32_t> links_dr(g.hphi_count(), 0);
    for (const TaggedEdge& e : g.edges)
      if (e.tag == EdgeTag::d_link) {
        if (e.v >= g.dr_base())
          ++links_dr[e.u];
        else
          ++links_dl[e.u];
      }
    for (uint32_t v = 0; v < g.hphi_count(); ++v)
      if (links_dl[v] != 1 || links_dr[v] != 1)
        report.fail("base vertex " + std::to_string(v) + " lacks one link into each block");
    const int dl_deg = g.dl_certificate ? g.dl_certificate->degree : -1;
    const int dr_deg = g.dr_certificate ? g.dr_certificate->degree : -1;
    for (uint32_t v = g.dl_base(); v < nv; ++v) {
      if (tag_deg(v, EdgeTag::d_link) > 1)
        report.fail("augmentation vertex " + std::to_string(v) + " has multiple base links");
      const int expect = (v < g.dr_base()) ? dl_deg : dr_deg;
      if (expect >= 0 && static_cast<int>(tag_deg(v, EdgeTag::d_expander)) != expect)
        report.fail("augmentation vertex " + std::to_string(v) + " breaks expander regularity");
    }
  } else {
    for (const TaggedEdge& e : g.edges)
      if (e.tag == EdgeTag::d_link || e.tag == EdgeTag::d_expander)
        report.fail("augmentation edge present before augmentation stage");
  }

  const uint32_t zr_cap = static_cast<uint32_t>(g.zr_certificate.degree) + 8;
  const uint32_t extra = g.stage == GadgetStage::usc ? 2 : 0;
  for (uint32_t v = 0; v < nv; ++v) {
    uint32_t total = 0;
    for (int t = 0; t < kTagCount; ++t) total += deg[v][t];
    const VertexRole role = g.info(v).role;
    uint32_t cap = 0;
    switch (role) {
      case VertexRole::left: cap = 5 + extra; break;
      case VertexRole::clique:
        cap = (g.stage == GadgetStage::bs_reduced ? s - 1 + g.params.beta * g.params.M + 1
                                                  : s - 1 + 12 * m) +
              extra;
        break;
      case VertexRole::zr: cap = zr_cap + extra; break;
      case VertexRole::dl:
        cap = static_cast<uint32_t>(g.dl_certificate ? g.dl_certificate->degree : 0) + 1;
        break;
      case VertexRole::dr:
        cap = static_cast<uint32_t>(g.dr_certificate ? g.dr_certificate->degree : 0) + 1;
        break;
    }
    if (total > cap)
      report.fail("vertex " + std::to_string(v) + " exceeds its role degree bound " +
                  std::to_string(cap));
  }

  return report;
}

nlohmann::json certificate_to_json(const ExpanderCertificate& c) {
  return nlohmann::json{{"size", c.size},           {"degree", c.degree},
                        {"method", c.method},       {"expansion", c.expansion},
                        {"target", c.target},       {"certified", c.certified},
                        {"attempts", c.attempts}};
}

ExpanderCertificate certificate_from_json(const nlohmann::json& j) {
  ExpanderCertificate c;
  c.size = j.at("size").get<int>();
  c.degree = j.at("degree").get<int>();
  c.method = j.at("method").get<std::string>();
  c.expansion = j.at("expansion").get<double>();
  c.target = j.at("target").get<double>();
  c.certified = j.at("certified").get<bool>();
  c.attempts = j.at("attempts").get<int>();
  return c;
}

nlohmann::json gadget_to_json(const GadgetGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const TaggedEdge& e : g.edges)
    edges.push_back(nlohmann::json::array({e.u, e.v, tag_to_string(e.tag)}));
  nlohmann::json j{
      {"schema", "gadget/v1"},
      {"stage", stage_to_string(g.stage)},
      {"params",
       {{"n", g.params.n},
        {"beta", g.params.beta},
        {"M", g.params.M},
        {"lambda", g.params.lambda},
        {"c", g.params.c},
        {"seed", g.params.seed}}},
      {"source", instance_to_json(g.source)},
      {"source_id", g.source_id},
      {"edges", std::move(edges)},
      {"zr_certificate", certificate_to_json(g.zr_certificate)},
  };
  j["dl_certificate"] =
      g.dl_certificate ? certificate_to_json(*g.dl_certificate) : nlohmann::json(nullptr);
  j["dr_certificate"] =
      g.dr_certificate ? certificate_to_json(*g.dr_certificate) : nlohmann::json(nullptr);
  return j;
}

GadgetGraph gadget_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "gadget/v1")
    throw std::invalid_argument("gadget_from_json: unknown schema");
  GadgetGraph g;
  g.stage = stage_from_string(j.at("stage").get<std::string>());
  const nlohmann::json& p = j.at("params");
  g.params.n = p.at("n").get<uint32_t>();
  g.params.beta = p.at("beta").get<uint32_t>();
  g.params.M = p.at("M").get<uint32_t>();
  g.params.lambda = p.at("lambda").get<uint32_t>();
  g.params.c = p.at("c").get<uint32_t>();
  g.params.seed = p.at("seed").get<uint64_t>();
  g.source = instance_from_json(j.at("source"));
  g.source_id = j.at("source_id").get<std::string>();
  for (const nlohmann::json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("gadget_from_json: malformed edge entry");
    g.edges.push_back(
        {e[0].get<uint32_t>(), e[1].get<uint32_t>(), tag_from_string(e[2].get<std::string>())});
  }
  g.zr_certificate = certificate_from_json(j.at("zr_certificate"));
  if (!j.at("dl_certificate").is_null())
    g.dl_certificate = certificate_from_json(j.at("dl_certificate"));
  if (!j.at("dr_certificate").is_null())
    g.dr_certificate = certificate_from_json(j.at("dr_certificate"));
  return g;
}

Graph to_simple_graph(const GadgetGraph& g) {
  Graph out(g.num_vertices());
  out.edges.reserve(g.edges.size());
  for (const TaggedEdge& e : g.edges) out.edges.emplace_back(e.u, e.v);
  out.canonicalize();
  return out;
}

void export_edge_list(const GadgetGraph& g, std::ostream& out) {
  out << "# 3xor gadget graph, stage " << stage_to_string(g.stage) << "\n";
  out << "# n=" << g.params.n << " beta=" << g.params.beta << " M=" << g.params.M
      << " lambda=" << g.params.lambda << " c=" << g.params.c << " seed=" << g.params.seed
      << " source=" << g.source_id << "\n";
  out << "# vertices=" << g.num_vertices() << " edges=" << g.edges.size() << "\n";
  out << "# role left [0," << g.left_count() << ")\n";
  out << "# role clique [" << g.clique_base() << "," << g.zr_base() << ")\n";
  out << "# role zr [" << g.zr_base() << "," << g.hphi_count() << ")\n";
  if (g.stage == GadgetStage::usc) {
    out << "# role dl [" << g.dl_base() << "," << g.dr_base() << ")\n";
    out << "# role dr [" << g.dr_base() << "," << g.num_vertices() << ")\n";
  }
  for (const TaggedEdge& e : g.edges) out << e.u << " " << e.v << "\n";
}

}  // namespace lasgap
