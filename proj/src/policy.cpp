#include "cuniform/policy.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cuniform {

namespace {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rational& operator+=(Rational o) {
    const std::int64_t g = std::gcd(den, o.den);
    const std::int64_t scale = o.den / g;
    num = num * scale + o.num * (den / g);
    den = den * scale;
    reduce();
    return *this;
  }
};

}  // namespace

ClosedForm1D closed_form_1d(int n, int k) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("closed_form_1d: need n >= 1 and k >= 1");
  }
  ClosedForm1D cf;
  cf.n = n;
  cf.k = k;
  cf.denominator = n + 2 * static_cast<std::int64_t>(k);
  cf.numerators.assign(n, std::vector<std::int64_t>(2 * k + 1, 1));
  for (int i = 0; i < n; ++i) {
    cf.numerators[i].front() = n - i;
    cf.numerators[i].back() = i + 1;
  }
  return cf;
}

double ActionDistribution::prob_of(std::int32_t action) const {
  for (const ActionProb& e : entries) {
    if (e.action == action) return e.p;
  }
  return 0.0;
}

FlowNetwork build_flow_network(const LevelSet& level, const LevelSet& next,
                               std::span<const EdgeRecord> edges) {
  FlowNetwork net;
  net.n = static_cast<int>(level.cells.size());
  net.m = static_cast<int>(next.cells.size());
  if (net.n == 0 || net.m == 0) {
    throw std::invalid_argument("build_flow_network: empty level");
  }
  // Nodes: 0 = source, 1..n = layer 1, n+1..n+m = layer 2, n+m+1 = sink.
  net.graph = FlowGraph(net.n + net.m + 2);
  net.source = 0;
  net.sink = net.n + net.m + 1;

  net.source_arc.reserve(net.n);
  for (int i = 0; i < net.n; ++i) {
    net.source_arc.push_back(net.graph.add_edge(net.source, 1 + i, net.m));
  }
  net.sink_arc.reserve(net.m);
  for (int j = 0; j < net.m; ++j) {
    net.sink_arc.push_back(
        net.graph.add_edge(1 + net.n + j, net.sink, net.n));
  }

  net.inner_arc.reserve(edges.size());
  net.arc_ends.reserve(edges.size());
  net.arcs_of_source.assign(net.n, {});
  std::vector<std::int32_t> indegree(net.m, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const EdgeRecord& edge = edges[e];
    if (edge.source < 0 || edge.source >= net.n || edge.target < 0 ||
        edge.target >= net.m) {
      throw std::invalid_argument("build_flow_network: edge endpoint not in level");
    }
    net.inner_arc.push_back(
        net.graph.add_edge(1 + edge.source, 1 + net.n + edge.target, net.m));
    net.arc_ends.emplace_back(edge.source, edge.target);
    net.arcs_of_source[edge.source].push_back(static_cast<int>(e));
    ++indegree[edge.target];
  }
  for (std::int32_t j = 0; j < net.m; ++j) {
    if (indegree[j] == 0) net.isolated_targets.push_back(j);
  }
  return net;
}

namespace {

// Warm start: stage 1 routes one unit through every inner arc; stage 2 tops
// each source up, first arc first, last arc next, then the rest in order,
// each capped by the target's remaining sink demand. On a 1-D walker band
// this already is the unique closed-form flow; in general Dinic finishes the
// job on the residual graph.
void seed_balanced_flow(FlowNetwork& net) {
  FlowGraph& g = net.graph;
  for (std::size_t e = 0; e < net.inner_arc.size(); ++e) {
    const auto [src, tgt] = net.arc_ends[e];
    if (g.capacity(net.source_arc[src]) - g.flow(net.source_arc[src]) < 1) continue;
    if (g.capacity(net.sink_arc[tgt]) - g.flow(net.sink_arc[tgt]) < 1) continue;
    g.push(net.source_arc[src], 1);
    g.push(net.inner_arc[e], 1);
    g.push(net.sink_arc[tgt], 1);
  }
  for (int src = 0; src < net.n; ++src) {
    const auto& arcs = net.arcs_of_source[src];
    if (arcs.empty()) continue;
    std::vector<int> order;
    order.reserve(arcs.size());
    order.push_back(arcs.front());
    if (arcs.size() > 1) order.push_back(arcs.back());
    for (std::size_t i = 1; i + 1 < arcs.size(); ++i) order.push_back(arcs[i]);
    for (int e : order) {
      std::int64_t leftover =
          g.capacity(net.source_arc[src]) - g.flow(net.source_arc[src]);
      if (leftover <= 0) break;
      const auto [esrc, tgt] = net.arc_ends[e];
      const std::int64_t demand =
          g.capacity(net.sink_arc[tgt]) - g.flow(net.sink_arc[tgt]);
      const std::int64_t room =
          g.capacity(net.inner_arc[e]) - g.flow(net.inner_arc[e]);
      const std::int64_t amount = std::min({leftover, demand, room});
      if (amount <= 0) continue;
      g.push(net.source_arc[src], amount);
      g.push(net.inner_arc[e], amount);
      g.push(net.sink_arc[tgt], amount);
    }
  }
}

}  // namespace

MaxFlowSolution solve_uniform_flow(FlowNetwork& net, bool balanced_seed) {
  if (balanced_seed) seed_balanced_flow(net);
  MaxFlowSolution sol;
  sol.value = net.graph.max_flow(net.source, net.sink);
  sol.inner_flow.reserve(net.inner_arc.size());
  for (int arc : net.inner_arc) sol.inner_flow.push_back(net.graph.flow(arc));
  return sol;
}

LevelPolicy extract_policy(const FlowNetwork& net, const MaxFlowSolution& sol,
                           std::span<const EdgeRecord> edges, int action_count) {
  if (sol.inner_flow.size() != edges.size()) {
    throw std::invalid_argument("extract_policy: flow/edge size mismatch");
  }
  LevelPolicy policy;
  policy.cells.resize(net.n);
  policy.flow_target = net.target_value();
  policy.flow_value = sol.value;
  policy.deficit =
      1.0 - static_cast<double>(sol.value) / static_cast<double>(policy.flow_target);

  for (int src = 0; src < net.n; ++src) {
    const auto& arcs = net.arcs_of_source[src];
    std::int64_t outflow = 0;
    for (int e : arcs) outflow += sol.inner_flow[e];

    // action id -> exact probability
    std::vector<std::pair<std::int32_t, Rational>> probs;
    if (outflow > 0) {
      for (int e : arcs) {
        const std::int64_t f = sol.inner_flow[e];
        if (f == 0) continue;
        const auto& actions = edges[e].actions;
        const auto split = static_cast<std::int64_t>(actions.size());
        for (std::int32_t a : actions) {
          Rational share{f, outflow * split};
          share.reduce();
          auto it = std::find_if(probs.begin(), probs.end(),
                                 [a](const auto& p) { return p.first == a; });
          if (it == probs.end()) {
            probs.emplace_back(a, share);
          } else {
            it->second += share;
          }
        }
      }
    } else {
      policy.fallback_cells.push_back(src);
      std::vector<std::int32_t> available;
      for (int e : arcs) {
        for (std::int32_t a : edges[e].actions) {
          if (std::find(available.begin(), available.end(), a) == available.end()) {
            available.push_back(a);
          }
        }
      }
      if (available.empty()) {
        available.resize(action_count);
        std::iota(available.begin(), available.end(), 0);
      }
      const auto count = static_cast<std::int64_t>(available.size());
      for (std::int32_t a : available) probs.emplace_back(a, Rational{1, count});
    }

    std::sort(probs.begin(), probs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ActionDistribution dist;
    dist.entries.reserve(probs.size());
    for (auto& [action, r] : probs) {
      dist.entries.push_back({action, r.num, r.den,
                              static_cast<double>(r.num) / static_cast<double>(r.den)});
    }
    policy.cells[src] = std::move(dist);
  }
  return policy;
}

const ActionDistribution* PolicyTable::distribution(int t,
                                                    const CellIndex& cell) const {
  if (t < 0 || t >= static_cast<int>(policies.size())) return nullptr;
  const std::int32_t pos = levels[t].position_of(cell);
  if (pos < 0) return nullptr;
  return &policies[t].cells[pos];
}

std::uint64_t PolicyTable::compat_hash() const {
  char buf[64];
  std::string canon = "model:" + model.kind;
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    canon += '|';
    canon += buf;
  };
  put(model.speed);
  put(model.control.lo);
  put(model.control.hi);
  canon += "|grid";
  for (const GridDim& d : grid.dims()) {
    put(d.cell_size);
    put(d.lower);
    put(d.upper);
    canon += d.angular ? "|a" : "|l";
  }
  canon += "|actions";
  for (const ControlInput& u : actions) {
    for (int d = 0; d < u.size(); ++d) put(u[d]);
  }
  canon += "|dt";
  put(dt);

  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

PolicyTable precompute(const ModelSpec& model_spec, const GridSpec& grid,
                       const State& x0, std::vector<ControlInput> actions,
                       int horizon, double dt, int samples_per_cell,
                       std::uint64_t seed) {
  const auto model = make_model(model_spec);
  PolicyTable table;
  table.model = model_spec;
  table.grid = grid;
  table.dt = dt;
  table.actions = std::move(actions);
  table.horizon = horizon;
  table.seed = seed;
  table.samples_per_cell = samples_per_cell;

  Rng rng = make_rng(seed);
  LevelChain chain = build_all_levels(*model, grid, x0, table.actions, horizon,
                                      samples_per_cell, dt, rng);
  table.levels = std::move(chain.levels);
  table.policies.reserve(horizon);
  table.stats.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    const auto start = std::chrono::steady_clock::now();
    FlowNetwork net =
        build_flow_network(table.levels[t], table.levels[t + 1], chain.edges[t]);
    MaxFlowSolution sol = solve_uniform_flow(net);
    LevelPolicy policy = extract_policy(net, sol, chain.edges[t],
                                        static_cast<int>(table.actions.size()));
    const auto stop = std::chrono::steady_clock::now();

    LevelStats stats;
    stats.cells = table.levels[t].size();
    stats.edges = static_cast<std::int64_t>(chain.edges[t].size());
    stats.flow_value = policy.flow_value;
    stats.flow_target = policy.flow_target;
    stats.deficit = policy.deficit;
    stats.solve_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    stats.dropped_out_of_bounds = chain.dropped[t];
    table.stats.push_back(stats);
    table.policies.push_back(std::move(policy));
  }
  return table;
}

}  // namespace cuniform
