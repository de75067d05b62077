#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace lasgap {

// Simple undirected graph. Edges are stored with u < v, sorted, duplicate-free.
struct Graph {
  uint32_t num_vertices = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;

  Graph() = default;
  explicit Graph(uint32_t n) : num_vertices(n) {}

  static Graph path(uint32_t n);
  static Graph cycle(uint32_t n);
  static Graph complete(uint32_t n);

  // Rejects self-loops and out-of-range endpoints; duplicate edges are an error.
  void add_edge(uint32_t u, uint32_t v);

  // Sorts the edge list and verifies simplicity; call after bulk construction.
  void canonicalize();

  std::vector<std::vector<uint32_t>> adjacency() const;
  std::vector<uint32_t> degrees() const;
  bool has_edge(uint32_t u, uint32_t v) const;  // requires a canonicalized edge list
  size_t num_edges() const { return edges.size(); }
};

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace lasgap
