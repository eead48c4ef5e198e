#pragma once

#include <cstdint>
#include <vector>

namespace cuniform {

// Exact integral max-flow (Dinic). Capacities and flows are 64-bit integers;
// no scaling or approximation anywhere, so a returned value is an exact
// optimum and per-edge flows satisfy conservation exactly.
class FlowGraph {
 public:
  explicit FlowGraph(int node_count);

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()) / 2; }

  // Adds a directed edge and its zero-capacity residual twin; returns the
  // edge id used by flow()/capacity()/push().
  int add_edge(int from, int to, std::int64_t capacity);

  std::int64_t flow(int edge_id) const;
  std::int64_t capacity(int edge_id) const;

  // Manually routes `amount` units through an edge (warm start). The caller
  // is responsible for keeping the overall assignment conservative; augmenting
  // afterwards is still exact because it works on the residual graph.
  // Returns false (and routes nothing) if the residual capacity is too small.
  bool push(int edge_id, std::int64_t amount);

  // Augments until no s->t path remains; returns the total net outflow of
  // `source`, i.e. seeded flow plus whatever augmentation added.
  std::int64_t max_flow(int source, int sink);

 private:
  struct HalfEdge {
    int to;
    std::int64_t residual;
  };

  bool bfs(int source, int sink);
  std::int64_t dfs(int v, int sink, std::int64_t limit);

  std::vector<HalfEdge> edges_;             // forward/backward pairs, id^1
  std::vector<std::vector<int>> adjacency_; // node -> half-edge ids
  std::vector<int> level_;
  std::vector<int> next_arc_;
};

}  // namespace cuniform
