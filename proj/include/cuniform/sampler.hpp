#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "cuniform/dynamics.hpp"
#include "cuniform/policy.hpp"

namespace cuniform {

enum class SamplerKind { cuniform, gaussian, lognormal };

std::string_view to_string(SamplerKind kind);
SamplerKind sampler_kind_from(std::string_view name);

struct SampleBatch {
  SamplerKind kind = SamplerKind::cuniform;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<Trajectory> trajectories;
  // Steps where the continuous state left the precomputed level cells and the
  // zero-control fallback was applied (cuniform only).
  std::int64_t drift_fallbacks = 0;
};

// Executes the precomputed policy: each step looks up the continuous state's
// cell at the current level, draws an action by inverse CDF over the cell's
// distribution, and propagates the continuous state. Trajectory k draws from
// substream(seed, k), so batches are prefix-nested in `count`.
//
// x0 must fall in the level-0 cell or one of its immediate neighbors (it is
// snapped to the level-0 cell); anything farther throws.
SampleBatch sample_cuniform(const PolicyTable& policy, const State& x0,
                            int steps, int count, std::uint64_t seed);

// u_t = clamp(nominal_t + eps), eps ~ N(0, sigma_u) i.i.d. per step and
// trajectory. sigma_u is a variance. Missing nominal entries are zero.
SampleBatch sample_gaussian(const SystemModel& model, const State& x0,
                            std::span<const ControlInput> nominal,
                            double sigma_u, int steps, int count, double dt,
                            std::uint64_t seed);

// Normal-log-normal noise: eps = eta * exp(zeta), eta ~ N(0, sigma_u),
// zeta ~ N(0, sigma_ln^2). sigma_ln == 0 reproduces sample_gaussian exactly.
SampleBatch sample_lognormal(const SystemModel& model, const State& x0,
                             std::span<const ControlInput> nominal,
                             double sigma_u, double sigma_ln, int steps,
                             int count, double dt, std::uint64_t seed);

// Cell-resolution view of the policy: walks the chain cell -> action ->
// cell-of(step(midpoint, action)) that the flow solution certifies, without
// tracking a continuous state. Returns per-level visit counts parallel to
// table.levels[t].cells for t = 0..steps. Assumes midpoint-mode precompute.
std::vector<std::vector<std::int64_t>> sample_cuniform_cells(
    const PolicyTable& table, int steps, std::int64_t count,
    std::uint64_t seed);

// CSV export, one row per state: traj_id, t, <coordinates...>, u (the control
// applied at t; empty on the final state).
void write_batch_csv(const SampleBatch& batch, std::ostream& out);
void write_batch_json(const SampleBatch& batch, std::ostream& out);

}  // namespace cuniform
