#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lasgap/gadgets.hpp"
#include "lasgap/prng.hpp"

namespace lasgap {

namespace {

uint64_t edge_key(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | b;
}

// Exact minimum of (edges leaving T) / |T| over nonempty T with |T| <= size/2.
double bruteforce_expansion(const std::vector<uint64_t>& adj, uint32_t size) {
  const uint32_t half = size / 2;
  uint64_t best_num = UINT64_MAX;
  uint64_t best_den = 1;
  const uint64_t full = (1ULL << size) - 1;
  for (uint64_t mask = 1; mask <= full; ++mask) {
    uint32_t card = static_cast<uint32_t>(std::popcount(mask));
    if (card > half) continue;
    uint64_t leaving = 0;
    for (uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      uint32_t u = static_cast<uint32_t>(std::countr_zero(rest));
      leaving += static_cast<uint64_t>(std::popcount(adj[u] & ~mask));
    }
    if (leaving * best_den < best_num * card) {
      best_num = leaving;
      best_den = card;
    }
  }
  if (best_den == 1 && best_num == UINT64_MAX) return 0.0;
  return static_cast<double>(best_num) / static_cast<double>(best_den);
}

double second_adjacency_eigenvalue(const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                   uint32_t size) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (const auto& [u, v] : edges) {
    a(u, v) += 1.0;
    a(v, u) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(size - 2);
}

// Power iteration on A + degree*I deflated against the all-ones vector (the
// top eigenvector of a regular graph). Rayleigh quotients approach the second
// eigenvalue from below, so the implied expansion bound can overshoot; the
// caller must not mark it certified.
double estimate_second_eigenvalue(const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                  uint32_t size, uint32_t degree) {
  Rng rng(0x657374696d617465ULL);
  Eigen::VectorXd v(size);
  for (uint32_t i = 0; i < size; ++i) {
    v(i) = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53 - 0.5;
  }
  auto deflate = [](Eigen::VectorXd& x) { x.array() -= x.mean(); };
  deflate(v);
  if (v.norm() == 0.0) v(0) = 1.0;
  v.normalize();
  Eigen::VectorXd w(size);
  const double shift = static_cast<double>(degree);
  for (int iter = 0; iter < 400; ++iter) {
    w.setZero();
    for (const auto& [a, b] : edges) {
      w(a) += v(b);
      w(b) += v(a);
    }
    w += shift * v;
    deflate(w);
    double nrm = w.norm();
    if (nrm == 0.0) break;
    v = w / nrm;
  }
  w.setZero();
  for (const auto& [a, b] : edges) {
    w(a) += v(b);
    w(b) += v(a);
  }
  return v.dot(w);
}

}  // namespace

std::vector<std::pair<uint32_t, uint32_t>> random_regular_graph(uint32_t size, uint32_t degree,
                                                                Rng& rng) {
  if (degree == 0) return {};
  if (degree >= size) throw std::invalid_argument("random_regular_graph: degree must be < size");
  if ((static_cast<uint64_t>(size) * degree) % 2 != 0)
    throw std::invalid_argument("random_regular_graph: degree*size must be even");

  std::vector<uint32_t> stubs;
  stubs.reserve(static_cast<size_t>(size) * degree);
  for (uint32_t v = 0; v < size; ++v)
    for (uint32_t k = 0; k < degree; ++k) stubs.push_back(v);

  const size_t pair_count = stubs.size() / 2;
  for (int restart = 0; restart < 50; ++restart) {
    rng.shuffle(stubs);
    std::vector<std::pair<uint32_t, uint32_t>> pairs(pair_count);
    std::unordered_set<uint64_t> present;
    present.reserve(pair_count * 2);
    std::vector<size_t> bad;
    std::vector<char> is_bad(pair_count, 0);
    for (size_t i = 0; i < pair_count; ++i) {
      pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};
      const auto [u, v] = pairs[i];
      if (u == v || !present.insert(edge_key(u, v)).second) {
        bad.push_back(i);
        is_bad[i] = 1;
      }
    }

    // Swap repair: a bad pair (self-loop or duplicate) trades endpoints with
    // a random partner pair. Each accepted swap removes at least one bad pair
    // and never invalidates a valid one.
    size_t attempts_left = 400 * pair_count + 10000;
    while (!bad.empty() && attempts_left > 0) {
      --attempts_left;
      const size_t i = bad.back();
      const auto [u, v] = pairs[i];
      const size_t j = static_cast<size_t>(rng.below(pair_count));
      if (j == i) continue;
      auto [x, y] = pairs[j];
      if (rng.next_bit()) std::swap(x, y);
      if (u == x || v == y) continue;
      const uint64_t k1 = edge_key(u, x);
      const uint64_t k2 = edge_key(v, y);
      if (k1 == k2 || present.count(k1) != 0 || present.count(k2) != 0) continue;
      if (x != y && !is_bad[j]) present.erase(edge_key(x, y));
      pairs[i] = {u, x};
      pairs[j] = {v, y};
      present.insert(k1);
      present.insert(k2);
      bad.pop_back();
      is_bad[i] = 0;
      if (is_bad[j]) {
        is_bad[j] = 0;
        std::erase(bad, j);
      }
    }
    if (!bad.empty()) continue;

    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(pair_count);
    for (auto [u, v] : pairs) {
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  }
  throw std::runtime_error("random_regular_graph: pairing repair did not converge");
}

ExpanderCertificate certify_expansion(const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                      uint32_t size, uint32_t degree, double target) {
  ExpanderCertificate cert;
  cert.size = static_cast<int>(size);
  cert.degree = static_cast<int>(degree);
  cert.target = target;
  if (size <= 20) {
    std::vector<uint64_t> adj(size, 0);
    for (const auto& [u, v] : edges) {
      adj[u] |= 1ULL << v;
      adj[v] |= 1ULL << u;
    }
    cert.method = "bruteforce";
    cert.expansion = bruteforce_expansion(adj, size);
    cert.certified = cert.expansion >= target;
  } else if (size <= 1024) {
    cert.method = "spectral";
    const double lam2 = second_adjacency_eigenvalue(edges, size);
    cert.expansion = (static_cast<double>(degree) - lam2) / 2.0;
    cert.certified = cert.expansion >= target;
  } else {
    cert.method = "estimate";
    const double lam2 = estimate_second_eigenvalue(edges, size, degree);
    cert.expansion = (static_cast<double>(degree) - lam2) / 2.0;
    cert.certified = false;
  }
  return cert;
}

ExpanderResult build_expander(uint32_t size, uint32_t degree, double target, uint64_t seed,
                              int max_attempts) {
  if (size == 0) throw std::invalid_argument("build_expander: size must be positive");
  if (degree >= size) throw std::invalid_argument("build_expander: degree must be < size");

  if (degree + 1 == size) {
    ExpanderResult res;
    res.edges.reserve(static_cast<size_t>(size) * (size - 1) / 2);
    for (uint32_t u = 0; u < size; ++u)
      for (uint32_t v = u + 1; v < size; ++v) res.edges.emplace_back(u, v);
    res.certificate.size = static_cast<int>(size);
    res.certificate.degree = static_cast<int>(degree);
    res.certificate.method = "complete";
    res.certificate.expansion = static_cast<double>((size + 1) / 2);
    res.certificate.target = target;
    res.certificate.certified = res.certificate.expansion >= target;
    res.certificate.attempts = 1;
    if (!res.certificate.certified)
      throw std::runtime_error("build_expander: complete graph expansion " +
                               std::to_string(res.certificate.expansion) + " below target " +
                               std::to_string(target));
    return res;
  }

  if ((static_cast<uint64_t>(size) * degree) % 2 != 0)
    throw std::invalid_argument("build_expander: degree*size must be even");

  Rng rng(seed);
  double best = -1.0;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto edges = random_regular_graph(size, degree, rng);
    ExpanderCertificate cert = certify_expansion(edges, size, degree, target);
    cert.attempts = attempt;
    best = std::max(best, cert.expansion);
    if (cert.certified) return {std::move(edges), cert};
  }
  throw std::runtime_error("build_expander: certification failed after " +
                           std::to_string(max_attempts) + " attempts; best bound " +
                           std::to_string(best) + " vs target " + std::to_string(target));
}

}  // namespace lasgap
