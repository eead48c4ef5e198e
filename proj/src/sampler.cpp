#include "cuniform/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cuniform/rng.hpp"

namespace cuniform {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::cuniform: return "cuniform";
    case SamplerKind::gaussian: return "gaussian";
    case SamplerKind::lognormal: return "lognormal";
  }
  return "?";
}

SamplerKind sampler_kind_from(std::string_view name) {
  if (name == "cuniform") return SamplerKind::cuniform;
  if (name == "gaussian") return SamplerKind::gaussian;
  if (name == "lognormal") return SamplerKind::lognormal;
  throw std::invalid_argument("unknown sampler kind: " + std::string(name));
}

namespace {

std::int32_t draw_action(const ActionDistribution& dist, Rng& rng) {
  const double r = uniform01(rng);
  double cum = 0.0;
  for (const ActionProb& e : dist.entries) {
    cum += e.p;
    if (r < cum) return e.action;
  }
  return dist.entries.back().action;
}

// Snaps x0 to the policy's level-0 cell if it is that cell or an immediate
// neighbor of it; throws otherwise.
CellIndex anchor_cell(const PolicyTable& policy, const State& x0) {
  const LevelSet& level0 = policy.levels.front();
  const CellIndex start = policy.grid.cell_of(x0);
  if (level0.contains(start)) return start;
  const CellIndex* best = nullptr;
  for (const CellIndex& c : level0.cells) {
    bool adjacent = true;
    for (int d = 0; d < start.dim; ++d) {
      std::int32_t gap = std::abs(c.idx[d] - start.idx[d]);
      if (policy.grid.dim_info(d).angular) {
        const auto count = static_cast<std::int32_t>(policy.grid.cell_count(d));
        gap = std::min(gap, count - gap);
      }
      if (gap > 1) {
        adjacent = false;
        break;
      }
    }
    if (adjacent) {
      best = &c;
      break;
    }
  }
  if (best == nullptr) {
    throw std::invalid_argument(
        "sample_cuniform: x0 is not within one cell of the policy's level-0 cell");
  }
  return *best;
}

}  // namespace

SampleBatch sample_cuniform(const PolicyTable& policy, const State& x0,
                            int steps, int count, std::uint64_t seed) {
  if (steps < 1 || steps > policy.horizon) {
    throw std::invalid_argument("sample_cuniform: steps must be in 1..horizon");
  }
  if (count < 1) {
    throw std::invalid_argument("sample_cuniform: count must be >= 1");
  }
  const auto model = make_model(policy.model);
  const ControlInput hold = model->clamp(ControlInput::zeros(model->control_dim()));
  anchor_cell(policy, x0);  // validates x0 against level 0

  SampleBatch batch;
  batch.kind = SamplerKind::cuniform;
  batch.seed = seed;
  batch.dt = policy.dt;
  batch.trajectories.reserve(count);
  for (int k = 0; k < count; ++k) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(k));
    Trajectory traj;
    traj.dt = policy.dt;
    traj.states.reserve(steps + 1);
    traj.controls.reserve(steps);
    traj.states.push_back(x0);
    State state = x0;
    for (int t = 0; t < steps; ++t) {
      ControlInput u = hold;
      CellIndex cell;
      const ActionDistribution* dist = nullptr;
      if (policy.grid.try_cell_of(state, cell)) {
        dist = policy.distribution(t, cell);
      }
      if (dist != nullptr && !dist->entries.empty()) {
        u = policy.actions[draw_action(*dist, rng)];
      } else {
        ++batch.drift_fallbacks;
      }
      state = model->step(state, u, policy.dt);
      traj.controls.push_back(u);
      traj.states.push_back(state);
    }
    batch.trajectories.push_back(std::move(traj));
  }
  return batch;
}

namespace {

SampleBatch sample_noise(const SystemModel& model, const State& x0,
                         std::span<const ControlInput> nominal, double sigma_u,
                         double sigma_ln, bool lognormal, int steps, int count,
                         std::uint64_t seed, double dt) {
  if (!(sigma_u > 0.0)) {
    throw std::invalid_argument("noise sampler: sigma_u must be positive");
  }
  if (steps < 1 || count < 1) {
    throw std::invalid_argument("noise sampler: steps and count must be >= 1");
  }
  const double std_u = std::sqrt(sigma_u);
  const int cdim = model.control_dim();

  SampleBatch batch;
  batch.kind = lognormal ? SamplerKind::lognormal : SamplerKind::gaussian;
  batch.seed = seed;
  batch.dt = dt;
  batch.trajectories.reserve(count);
  for (int k = 0; k < count; ++k) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(k));
    Trajectory traj;
    traj.dt = dt;
    traj.states.reserve(steps + 1);
    traj.controls.reserve(steps);
    traj.states.push_back(x0);
    State state = x0;
    for (int t = 0; t < steps; ++t) {
      ControlInput u = ControlInput::zeros(cdim);
      for (int d = 0; d < cdim; ++d) {
        double eps = normal01(rng) * std_u;
        if (lognormal && sigma_ln > 0.0) {
          eps *= std::exp(normal01(rng) * sigma_ln);
        }
        const double nom =
            t < static_cast<int>(nominal.size()) && d < nominal[t].size()
                ? nominal[t][d]
                : 0.0;
        u[d] = nom + eps;
      }
      u = model.clamp(u);
      state = model.step(state, u, dt);
      traj.controls.push_back(u);
      traj.states.push_back(state);
    }
    batch.trajectories.push_back(std::move(traj));
  }
  return batch;
}

}  // namespace

SampleBatch sample_gaussian(const SystemModel& model, const State& x0,
                            std::span<const ControlInput> nominal,
                            double sigma_u, int steps, int count, double dt,
                            std::uint64_t seed) {
  return sample_noise(model, x0, nominal, sigma_u, 0.0, false, steps, count,
                      seed, dt);
}

SampleBatch sample_lognormal(const SystemModel& model, const State& x0,
                             std::span<const ControlInput> nominal,
                             double sigma_u, double sigma_ln, int steps,
                             int count, double dt, std::uint64_t seed) {
  return sample_noise(model, x0, nominal, sigma_u, sigma_ln, true, steps,
                      count, seed, dt);
}

std::vector<std::vector<std::int64_t>> sample_cuniform_cells(
    const PolicyTable& table, int steps, std::int64_t count,
    std::uint64_t seed) {
  if (steps < 1 || steps > table.horizon) {
    throw std::invalid_argument("sample_cuniform_cells: bad step count");
  }
  const auto model = make_model(table.model);
  std::vector<std::vector<std::int64_t>> visits(steps + 1);
  for (int t = 0; t <= steps; ++t) {
    visits[t].assign(table.levels[t].cells.size(), 0);
  }
  for (std::int64_t k = 0; k < count; ++k) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(k));
    CellIndex cell = table.levels.front().cells.front();
    std::int32_t pos = 0;
    ++visits[0][0];
    for (int t = 0; t < steps; ++t) {
      const ActionDistribution& dist = table.policies[t].cells[pos];
      if (dist.entries.empty()) break;
      const std::int32_t action = draw_action(dist, rng);
      const State next =
          model->step(table.grid.midpoint_of(cell), table.actions[action],
                      table.dt);
      CellIndex next_cell;
      if (!table.grid.try_cell_of(next, next_cell)) break;
      pos = table.levels[t + 1].position_of(next_cell);
      if (pos < 0) break;
      cell = next_cell;
      ++visits[t + 1][pos];
    }
  }
  return visits;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  const int sdim =
      batch.trajectories.empty() ? 0 : batch.trajectories.front().states.front().size();
  out << "traj_id,t";
  static const char* kCoordNames[] = {"x", "y", "theta", "w"};
  for (int d = 0; d < sdim; ++d) out << ',' << kCoordNames[d];
  out << ",u\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  for (std::size_t k = 0; k < batch.trajectories.size(); ++k) {
    const Trajectory& traj = batch.trajectories[k];
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
      out << k << ',' << t;
      for (int d = 0; d < traj.states[t].size(); ++d) {
        out << ',';
        put(traj.states[t][d]);
      }
      out << ',';
      if (t < traj.controls.size()) put(traj.controls[t][0]);
      out << '\n';
    }
  }
}

void write_batch_json(const SampleBatch& batch, std::ostream& out) {
  nlohmann::json doc;
  doc["kind"] = to_string(batch.kind);
  doc["seed"] = batch.seed;
  doc["dt"] = batch.dt;
  doc["drift_fallbacks"] = batch.drift_fallbacks;
  auto& trajs = doc["trajectories"] = nlohmann::json::array();
  for (const Trajectory& traj : batch.trajectories) {
    nlohmann::json jt;
    auto& states = jt["states"] = nlohmann::json::array();
    for (const State& s : traj.states) {
      nlohmann::json js = nlohmann::json::array();
      for (int d = 0; d < s.size(); ++d) js.push_back(s[d]);
      states.push_back(std::move(js));
    }
    auto& controls = jt["controls"] = nlohmann::json::array();
    for (const ControlInput& u : traj.controls) {
      nlohmann::json ju = nlohmann::json::array();
      for (int d = 0; d < u.size(); ++d) ju.push_back(u[d]);
      controls.push_back(std::move(ju));
    }
    trajs.push_back(std::move(jt));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cuniform
