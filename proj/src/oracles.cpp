#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lasgap/artifact.hpp"
#include "lasgap/oracles.hpp"
#include "lasgap/prng.hpp"

namespace lasgap {

namespace {

std::vector<uint32_t> vertex_degrees(const Graph& g) {
  std::vector<uint32_t> deg(g.num_vertices, 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Cut cut_from_mask(uint32_t n, uint32_t mask) {
  Cut c;
  c.num_vertices = n;
  c.side.assign(n, 0);
  for (uint32_t u = 0; u < n; ++u)
    if ((mask >> u) & 1) c.side[u] = 1;
  return c;
}

uint64_t mask_crossing(const std::vector<uint32_t>& adj, uint32_t mask) {
  uint64_t crossing = 0;
  for (uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    const uint32_t u = static_cast<uint32_t>(std::countr_zero(rest));
    crossing += static_cast<uint64_t>(std::popcount(adj[u] & ~mask));
  }
  return crossing;
}

std::vector<uint32_t> adjacency_masks(const Graph& g) {
  std::vector<uint32_t> adj(g.num_vertices, 0);
  for (const auto& [u, v] : g.edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

// Local-search working state shared by both objectives.
struct SwapState {
  const Graph* g = nullptr;
  std::vector<std::vector<uint32_t>> adj;
  std::vector<uint32_t> deg;
  std::vector<uint8_t> side;
  std::vector<uint32_t> nb_a;  // neighbors currently on side A
  uint64_t crossing = 0;
  uint32_t size_a = 0;

  void reset(const std::vector<uint32_t>& members) {
    const uint32_t n = g->num_vertices;
    side.assign(n, 0);
    for (uint32_t u : members) side[u] = 1;
    size_a = static_cast<uint32_t>(members.size());
    nb_a.assign(n, 0);
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t y : adj[u])
        if (side[y]) ++nb_a[u];
    crossing = 0;
    for (uint32_t u = 0; u < n; ++u)
      if (side[u]) crossing += deg[u] - nb_a[u];
  }

  bool edge(uint32_t u, uint32_t v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  int64_t swap_delta(uint32_t u, uint32_t v) const {  // u leaves A, v enters
    return 2 * static_cast<int64_t>(nb_a[u]) - deg[u] + deg[v] -
           2 * static_cast<int64_t>(nb_a[v]) + (edge(u, v) ? 2 : 0);
  }

  int64_t leave_delta(uint32_t u) const {
    return 2 * static_cast<int64_t>(nb_a[u]) - deg[u];
  }

  int64_t enter_delta(uint32_t v) const {
    return static_cast<int64_t>(deg[v]) - 2 * static_cast<int64_t>(nb_a[v]);
  }

  void flip(uint32_t u) {
    if (side[u]) {
      crossing += leave_delta(u);
      side[u] = 0;
      --size_a;
      for (uint32_t y : adj[u]) --nb_a[y];
    } else {
      crossing += enter_delta(u);
      side[u] = 1;
      ++size_a;
      for (uint32_t y : adj[u]) ++nb_a[y];
    }
  }

  void swap(uint32_t u, uint32_t v) {
    crossing += swap_delta(u, v);
    side[u] = 0;
    side[v] = 1;
    for (uint32_t y : adj[u]) --nb_a[y];
    for (uint32_t y : adj[v]) ++nb_a[y];
  }

  Cut to_cut() const {
    Cut c;
    c.num_vertices = g->num_vertices;
    c.side = side;
    return c;
  }
};

SwapState make_state(const Graph& g) {
  SwapState st;
  st.g = &g;
  st.adj = g.adjacency();
  for (auto& list : st.adj) std::sort(list.begin(), list.end());
  st.deg = vertex_degrees(g);
  return st;
}

bool lex_less(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  // Side-A member lists compare lexicographically; with equal-length bit
  // vectors that is the same as reversed bit-vector order, so compare members.
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];  // a 1 earlier means a smaller member
  }
  return false;
}

void require_nontrivial(uint32_t size_a, uint32_t n) {
  if (size_a == 0 || size_a == n)
    throw std::invalid_argument("cut statistics need both sides nonempty");
}

}  // namespace

Cut::Cut(uint32_t n, const std::vector<uint32_t>& a) : num_vertices(n), side(n, 0) {
  for (uint32_t u : a) {
    if (u >= n) throw std::out_of_range("Cut: vertex " + std::to_string(u) + " out of range");
    side[u] = 1;
  }
}

uint32_t Cut::size_a() const {
  uint32_t s = 0;
  for (uint8_t b : side) s += b;
  return s;
}

std::vector<uint32_t> Cut::members() const {
  std::vector<uint32_t> out;
  for (uint32_t u = 0; u < num_vertices; ++u)
    if (side[u]) out.push_back(u);
  return out;
}

uint64_t cut_edges(const Graph& g, const Cut& a) {
  if (a.num_vertices != g.num_vertices || a.side.size() != g.num_vertices)
    throw std::invalid_argument("cut_edges: cut does not index this graph");
  uint64_t crossing = 0;
  for (const auto& [u, v] : g.edges)
    if (a.side[u] != a.side[v]) ++crossing;
  return crossing;
}

CutStats evaluate_cut(const Graph& g, const Cut& a) {
  const uint32_t sa = a.size_a();
  require_nontrivial(sa, g.num_vertices);
  CutStats s;
  s.crossing = cut_edges(g, a);
  s.size_a = sa;
  s.size_b = g.num_vertices - sa;
  s.sparsity = Rational(s.crossing) /
               (Rational(static_cast<uint64_t>(s.size_a)) * Rational(static_cast<uint64_t>(s.size_b)));
  s.balance = Rational(static_cast<uint64_t>(sa)) / Rational(static_cast<uint64_t>(g.num_vertices));
  return s;
}

CutResult best_balanced_separator(const Graph& g, const Rational& tau, SearchMode mode,
                                  uint64_t seed) {
  const uint32_t n = g.num_vertices;
  if (n < 2) throw std::invalid_argument("best_balanced_separator: need at least 2 vertices");
  if (tau <= 0 || tau > Rational(1, 2))
    throw std::invalid_argument("best_balanced_separator: tau must lie in (0, 1/2]");
  const long long lo = ceil_ll(tau * Rational(n));
  const long long hi = floor_ll((Rational(1) - tau) * Rational(n));
  if (lo > hi)
    throw std::invalid_argument("best_balanced_separator: no feasible cardinality at this tau");

  if (mode == SearchMode::exact) {
    if (n > 26)
      throw std::invalid_argument("best_balanced_separator: exact mode is limited to 26 vertices");
    const auto adj = adjacency_masks(g);
    uint64_t best = std::numeric_limits<uint64_t>::max();
    uint32_t best_mask = 0;
    const uint32_t full = (1u << n) - 1;
    for (uint32_t mask = 1; mask < full; ++mask) {
      const int pc = std::popcount(mask);
      if (pc < lo || pc > hi) continue;
      const uint64_t crossing = mask_crossing(adj, mask);
      if (crossing < best) {
        best = crossing;
        best_mask = mask;
      }
    }
    Cut cut = cut_from_mask(n, best_mask);
    return {cut, evaluate_cut(g, cut)};
  }

  SwapState st = make_state(g);
  Rng rng(seed);
  bool have_best = false;
  uint64_t best_crossing = 0;
  std::vector<uint8_t> best_side;
  for (int restart = 0; restart < 64; ++restart) {
    const uint32_t k = static_cast<uint32_t>(rng.in_range(lo, hi));
    st.reset(rng.sample_distinct(n, k));
    bool improved = true;
    while (improved) {
      improved = false;
      for (uint32_t u = 0; u < n && !improved; ++u) {
        if (!st.side[u]) continue;
        for (uint32_t v = 0; v < n; ++v) {
          if (st.side[v]) continue;
          if (st.swap_delta(u, v) < 0) {
            st.swap(u, v);
            improved = true;
            break;
          }
        }
      }
    }
    if (!have_best || st.crossing < best_crossing ||
        (st.crossing == best_crossing && lex_less(st.side, best_side))) {
      have_best = true;
      best_crossing = st.crossing;
      best_side = st.side;
    }
  }
  Cut cut;
  cut.num_vertices = n;
  cut.side = best_side;
  return {cut, evaluate_cut(g, cut)};
}

CutResult best_sparsest_cut(const Graph& g, SearchMode mode, uint64_t seed) {
  const uint32_t n = g.num_vertices;
  if (n < 2) throw std::invalid_argument("best_sparsest_cut: need at least 2 vertices");

  if (mode == SearchMode::exact) {
    if (n > 26)
      throw std::invalid_argument("best_sparsest_cut: exact mode is limited to 26 vertices");
    const auto adj = adjacency_masks(g);
    uint64_t best_num = 1;
    uint64_t best_den = 0;  // sentinel infinity
    uint32_t best_mask = 0;
    const uint32_t full = (1u << n) - 1;
    for (uint32_t mask = 1; mask < full; ++mask) {
      const uint64_t sa = static_cast<uint64_t>(std::popcount(mask));
      const uint64_t den = sa * (n - sa);
      const uint64_t num = mask_crossing(adj, mask);
      if (best_den == 0 || num * best_den < best_num * den) {
        best_num = num;
        best_den = den;
        best_mask = mask;
      }
    }
    Cut cut = cut_from_mask(n, best_mask);
    return {cut, evaluate_cut(g, cut)};
  }

  SwapState st = make_state(g);
  Rng rng(seed);
  bool have_best = false;
  Rational best_sparsity;
  std::vector<uint8_t> best_side;
  auto sparser = [&](uint64_t cross, uint32_t sa) {
    const uint64_t den = static_cast<uint64_t>(sa) * (n - sa);
    return Rational(cross) / Rational(den);
  };
  for (int restart = 0; restart < 64; ++restart) {
    const uint32_t k = static_cast<uint32_t>(rng.in_range(1, n - 1));
    st.reset(rng.sample_distinct(n, k));
    bool improved = true;
    while (improved) {
      improved = false;
      const int64_t cross = static_cast<int64_t>(st.crossing);
      const int64_t sa = st.size_a;
      const int64_t sb = static_cast<int64_t>(n) - sa;
      // Exact fraction comparison: accept when new_cross/new_den < cross/den.
      auto accept = [&](int64_t delta, int64_t new_sa) {
        const int64_t new_sb = static_cast<int64_t>(n) - new_sa;
        if (new_sa <= 0 || new_sb <= 0) return false;
        return (cross + delta) * (sa * sb) < cross * (new_sa * new_sb);
      };
      for (uint32_t u = 0; u < n && !improved; ++u) {
        if (st.side[u]) {
          if (accept(st.leave_delta(u), sa - 1)) {
            st.flip(u);
            improved = true;
            break;
          }
        } else if (accept(st.enter_delta(u), sa + 1)) {
          st.flip(u);
          improved = true;
          break;
        }
      }
      for (uint32_t u = 0; u < n && !improved; ++u) {
        if (!st.side[u]) continue;
        for (uint32_t v = 0; v < n; ++v) {
          if (st.side[v]) continue;
          if (accept(st.swap_delta(u, v), sa)) {
            st.swap(u, v);
            improved = true;
            break;
          }
        }
      }
    }
    const Rational sp = sparser(st.crossing, st.size_a);
    if (!have_best || sp < best_sparsity ||
        (sp == best_sparsity && lex_less(st.side, best_side))) {
      have_best = true;
      best_sparsity = sp;
      best_side = st.side;
    }
  }
  Cut cut;
  cut.num_vertices = n;
  cut.side = best_side;
  return {cut, evaluate_cut(g, cut)};
}

Lemma33Report check_lemma33(const Xor3Instance& inst, const GadgetGraph& h,
                            const std::vector<uint32_t>& literals) {
  if (h.source_id != content_id(instance_to_json(inst)))
    throw std::invalid_argument("check_lemma33: gadget was not built from this instance");
  const uint32_t n = inst.n;
  const uint32_t m = inst.m();
  std::vector<uint8_t> in_set(2 * static_cast<size_t>(n), 0);
  uint32_t card = 0;
  for (uint32_t lit : literals) {
    if (lit >= 2 * n)
      throw std::invalid_argument("check_lemma33: literal " + std::to_string(lit) +
                                  " out of range");
    if (!in_set[lit]) {
      in_set[lit] = 1;
      ++card;
    }
  }

  Lemma33Report rep;
  for (const TaggedEdge& e : h.edges) {
    if (e.tag != EdgeTag::left_rep) continue;
    const VertexInfo iv = h.info(e.v);
    if (in_set[2 * iv.a + iv.b]) ++rep.deg;
  }
  for (uint32_t i = 0; i < m; ++i) {
    const XorConstraint& c = inst.constraints[i];
    for (uint8_t mask : satisfying_masks(c)) {
      bool all = true;
      for (uint32_t p = 0; p < 3 && all; ++p)
        all = in_set[2 * c.vars[p] + ((mask >> p) & 1)] != 0;
      if (all) ++rep.contained;
    }
  }

  rep.meaningful = 3ull * card >= n;
  const double root_beta = std::sqrt(static_cast<double>(h.params.beta));
  const double b1 = 6.0 * m * card / static_cast<double>(n) * (1.0 - 20.0 / root_beta);
  const double b2 = static_cast<double>(m) * card * card * card /
                    (2.0 * std::pow(static_cast<double>(n), 3)) * (1.0 + 100.0 / root_beta);
  rep.bound1_ok = static_cast<double>(rep.deg) >= b1;
  rep.bound2_ok = static_cast<double>(rep.contained) <= b2;
  return rep;
}

SoundnessReference bs_soundness_reference(const Rational& tau, uint32_t m) {
  if (tau <= Rational(1, 3) || tau >= Rational(1, 2))
    throw std::invalid_argument("bs_soundness_reference: tau must lie in (1/3, 1/2)");
  SoundnessReference ref;
  ref.value = Rational(4u * m) * (3 * tau - tau * tau * tau);
  ref.corrections_included = false;
  return ref;
}

SoundnessReference usc_soundness_reference(uint32_t M, uint32_t m) {
  if (M == 0 || m == 0)
    throw std::invalid_argument("usc_soundness_reference: M and m must be positive");
  SoundnessReference ref;
  const Rational denom = Rational(1001ull * M * m) * Rational(1001ull * M * m);
  ref.value = (Rational(1) + Rational(1, 100ull * M)) *
              Rational(static_cast<uint64_t>(2 * M + 10) * m) / denom;
  ref.corrections_included = true;
  return ref;
}

nlohmann::json cut_to_json(const Cut& c) {
  return nlohmann::json{{"n", c.num_vertices}, {"members", c.members()}};
}

Cut cut_from_json(const nlohmann::json& j) {
  return Cut(j.at("n").get<uint32_t>(), j.at("members").get<std::vector<uint32_t>>());
}

std::string cut_stats_csv_header() { return "crossing,size_a,size_b,sparsity,balance"; }

std::string cut_stats_csv_row(const CutStats& s) {
  std::ostringstream out;
  out << s.crossing << "," << s.size_a << "," << s.size_b << ","
      << to_fraction_string(s.sparsity) << "," << to_fraction_string(s.balance);
  return out.str();
}

}  // namespace lasgap
