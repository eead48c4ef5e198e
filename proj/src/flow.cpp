#include "cuniform/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace cuniform {

FlowGraph::FlowGraph(int node_count)
    : adjacency_(node_count), level_(node_count), next_arc_(node_count) {
  if (node_count < 2) {
    throw std::invalid_argument("FlowGraph: need at least two nodes");
  }
}

int FlowGraph::add_edge(int from, int to, std::int64_t capacity) {
  if (from < 0 || from >= node_count() || to < 0 || to >= node_count()) {
    throw std::out_of_range("FlowGraph: edge endpoint out of range");
  }
  if (capacity < 0) {
    throw std::invalid_argument("FlowGraph: negative capacity");
  }
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity});
  edges_.push_back({from, 0});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id / 2;
}

std::int64_t FlowGraph::flow(int edge_id) const {
  return edges_[2 * edge_id + 1].residual;
}

std::int64_t FlowGraph::capacity(int edge_id) const {
  return edges_[2 * edge_id].residual + edges_[2 * edge_id + 1].residual;
}

bool FlowGraph::push(int edge_id, std::int64_t amount) {
  if (amount < 0 || edges_[2 * edge_id].residual < amount) return false;
  edges_[2 * edge_id].residual -= amount;
  edges_[2 * edge_id + 1].residual += amount;
  return true;
}

bool FlowGraph::bfs(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int id : adjacency_[v]) {
      const HalfEdge& e = edges_[id];
      if (e.residual > 0 && level_[e.to] == -1) {
        level_[e.to] = level_[v] + 1;
        queue.push(e.to);
      }
    }
  }
  return level_[sink] != -1;
}

std::int64_t FlowGraph::dfs(int v, int sink, std::int64_t limit) {
  if (v == sink) return limit;
  for (int& i = next_arc_[v]; i < static_cast<int>(adjacency_[v].size()); ++i) {
    const int id = adjacency_[v][i];
    HalfEdge& e = edges_[id];
    if (e.residual <= 0 || level_[e.to] != level_[v] + 1) continue;
    const std::int64_t pushed = dfs(e.to, sink, std::min(limit, e.residual));
    if (pushed > 0) {
      e.residual -= pushed;
      edges_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowGraph::max_flow(int source, int sink) {
  if (source == sink) {
    throw std::invalid_argument("FlowGraph: source equals sink");
  }
  while (bfs(source, sink)) {
    std::fill(next_arc_.begin(), next_arc_.end(), 0);
    while (dfs(source, sink, std::numeric_limits<std::int64_t>::max()) > 0) {
    }
  }
  // Net outflow of the source covers seeded flow as well.
  std::int64_t total = 0;
  for (int id : adjacency_[source]) {
    if ((id & 1) == 0) {
      total += edges_[id ^ 1].residual;  // outgoing edge: flow sits on twin
    } else {
      total -= edges_[id].residual;      // incoming edge: subtract its flow
    }
  }
  return total;
}

}  // namespace cuniform
