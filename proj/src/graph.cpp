#include "lasgap/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lasgap {

Graph Graph::path(uint32_t n) {
  Graph g(n);
  for (uint32_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(uint32_t n) {
  if (n < 3) throw std::invalid_argument("Graph::cycle: need at least 3 vertices");
  Graph g(n);
  for (uint32_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  g.canonicalize();
  return g;
}

Graph Graph::complete(uint32_t n) {
  Graph g(n);
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

void Graph::add_edge(uint32_t u, uint32_t v) {
  if (u == v) throw std::invalid_argument("Graph::add_edge: self-loop");
  if (u >= num_vertices || v >= num_vertices) {
    throw std::out_of_range("Graph::add_edge: vertex out of range");
  }
  if (u > v) std::swap(u, v);
  edges.emplace_back(u, v);
}

void Graph::canonicalize() {
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u > v) std::swap(u, v);
    if (v >= num_vertices) throw std::out_of_range("Graph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) throw std::invalid_argument("Graph: duplicate edge");
}

std::vector<std::vector<uint32_t>> Graph::adjacency() const {
  std::vector<std::vector<uint32_t>> adj(num_vertices);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<uint32_t> Graph::degrees() const {
  std::vector<uint32_t> deg(num_vertices, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

bool Graph::has_edge(uint32_t u, uint32_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  return {{"num_vertices", g.num_vertices}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const nlohmann::json& j) {
  Graph g(j.at("num_vertices").get<uint32_t>());
  for (const auto& e : j.at("edges")) {
    g.edges.emplace_back(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
  }
  g.canonicalize();
  return g;
}

}  // namespace lasgap
