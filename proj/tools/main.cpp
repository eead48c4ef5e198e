// Command-line front end: precompute C-Uniform policies, sample trajectory
// batches, and run the coverage / obstacle-avoidance benchmark suites.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cuniform/config.hpp"
#include "cuniform/controller.hpp"
#include "cuniform/errors.hpp"
#include "cuniform/policy.hpp"
#include "cuniform/policy_io.hpp"
#include "cuniform/sampler.hpp"
#include "cuniform/simworld.hpp"
#include "cuniform/suites.hpp"

namespace {

using namespace cuniform;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIncompatible = 3;
constexpr int kExitSolver = 4;

std::uint64_t config_compat_hash(const ExperimentConfig& config) {
  PolicyTable header;
  header.model = config.model;
  header.grid = config.grid;
  header.dt = config.dt;
  header.actions = config.actions();
  return header.compat_hash();
}

PolicyTable load_compatible_policy(const ExperimentConfig& config,
                                   const std::string& path) {
  if (path.empty()) {
    throw ConfigError("this command needs --policy");
  }
  PolicyTable table = load_policy(path);
  if (table.compat_hash() != config_compat_hash(config)) {
    throw PolicyMismatchError(
        "policy file " + path +
        " was precomputed for a different model/grid/action configuration");
  }
  return table;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write output file: " + path);
  }
  return out;
}

int cmd_precompute(const ExperimentConfig& config, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  PolicyTable table =
      precompute(config.model, config.grid, config.origin(), config.actions(),
                 config.horizon_steps(), config.dt, config.samples_per_cell,
                 config.seed);
  const double total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  std::printf("level  cells    edges      flow          target        deficit  solve_ms\n");
  for (int t = 0; t < table.horizon; ++t) {
    const LevelStats& s = table.stats[t];
    std::printf("%5d  %7lld  %9lld  %12lld  %12lld  %.5f  %8.2f\n", t,
                static_cast<long long>(s.cells), static_cast<long long>(s.edges),
                static_cast<long long>(s.flow_value),
                static_cast<long long>(s.flow_target), s.deficit, s.solve_ms);
  }
  std::printf("final level cells: %lld\n",
              static_cast<long long>(table.levels.back().size()));
  save_policy(table, out_path);
  std::printf("wrote %s (seed %llu, total %.1f ms)\n", out_path.c_str(),
              static_cast<unsigned long long>(table.seed), total_ms);
  return kExitOk;
}

SampleBatch sample_by_config(const ExperimentConfig& config,
                             const PolicyTable* policy, int steps, int count,
                             std::uint64_t seed) {
  if (config.sampler_kind == SamplerKind::cuniform) {
    return sample_cuniform(*policy, config.origin(), steps, count, seed);
  }
  const auto model = make_model(config.model);
  const std::vector<ControlInput> nominal(
      steps, ControlInput::zeros(model->control_dim()));
  if (config.sampler_kind == SamplerKind::gaussian) {
    return sample_gaussian(*model, config.origin(), nominal, config.sigma_u,
                           steps, count, config.dt, seed);
  }
  return sample_lognormal(*model, config.origin(), nominal, config.sigma_u,
                          config.sigma_ln, steps, count, config.dt, seed);
}

int cmd_sample(const ExperimentConfig& config, const std::string& policy_path,
               const std::string& out_path) {
  std::optional<PolicyTable> policy;
  if (config.sampler_kind == SamplerKind::cuniform) {
    policy = load_compatible_policy(config, policy_path);
  }
  const int steps = config.sampler_kind == SamplerKind::cuniform
                        ? std::min(config.horizon_steps(), policy->horizon)
                        : config.horizon_steps();
  SampleBatch batch = sample_by_config(config, policy ? &*policy : nullptr,
                                       steps, config.sample_count, config.seed);

  auto out = open_out(out_path);
  const bool json = out_path.size() > 5 &&
                    out_path.substr(out_path.size() - 5) == ".json";
  if (json) {
    write_batch_json(batch, out);
  } else {
    out << "# seed=" << batch.seed << " kind=" << to_string(batch.kind)
        << " count=" << batch.trajectories.size() << "\n";
    write_batch_csv(batch, out);
  }
  std::printf("%s: %zu trajectories x %d steps (seed %llu)\n",
              std::string(to_string(batch.kind)).c_str(),
              batch.trajectories.size(), steps,
              static_cast<unsigned long long>(batch.seed));

  if (batch.kind == SamplerKind::cuniform) {
    // Per-level total-variation distance to the uniform distribution over L_t.
    for (int t = 1; t <= steps; ++t) {
      const LevelSet& level = policy->levels[t];
      std::vector<std::int64_t> counts(level.cells.size(), 0);
      std::int64_t off = 0;
      for (const Trajectory& traj : batch.trajectories) {
        CellIndex cell;
        if (!policy->grid.try_cell_of(traj.states[t], cell)) {
          ++off;
          continue;
        }
        const std::int32_t pos = level.position_of(cell);
        if (pos < 0) {
          ++off;
        } else {
          ++counts[pos];
        }
      }
      const double total = static_cast<double>(batch.trajectories.size());
      const double uniform = 1.0 / static_cast<double>(level.size());
      double tv = static_cast<double>(off) / total;
      for (std::int64_t c : counts) {
        tv += std::abs(static_cast<double>(c) / total - uniform);
      }
      tv *= 0.5;
      std::printf("  level %2d: |L|=%6lld  TV-to-uniform=%.4f\n", t,
                  static_cast<long long>(level.size()), tv);
    }
    if (batch.drift_fallbacks > 0) {
      std::printf("  drift fallbacks: %lld\n",
                  static_cast<long long>(batch.drift_fallbacks));
    }
  }
  return kExitOk;
}

std::string coverage_cell(const CoverageReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%lld (%.2f%%)",
                static_cast<long long>(report.covered), report.percent);
  return buf;
}

int cmd_coverage(const ExperimentConfig& config, const std::string& policy_path,
                 const std::string& out_path) {
  const PolicyTable policy = load_compatible_policy(config, policy_path);
  const int steps = std::min(config.coverage_steps, policy.horizon);
  const auto model = make_model(config.model);
  const std::vector<ControlInput> nominal(
      steps, ControlInput::zeros(model->control_dim()));
  const std::vector<double> variances = {0.03, 0.1, 0.3};
  const std::vector<std::string> labels = {"low", "medium", "high"};

  int max_k = 0;
  for (int k : config.coverage_counts) max_k = std::max(max_k, k);

  // One batch per sampler at the largest K; smaller K are prefixes by the
  // substream design, so the whole table comes from 7 batches.
  struct Column {
    std::string name;
    SampleBatch batch;
  };
  std::vector<Column> columns;
  for (std::size_t v = 0; v < variances.size(); ++v) {
    columns.push_back({"mppi_" + labels[v],
                       sample_gaussian(*model, config.origin(), nominal,
                                       variances[v], steps, max_k, config.dt,
                                       config.seed)});
  }
  for (std::size_t v = 0; v < variances.size(); ++v) {
    columns.push_back({"logmppi_" + labels[v],
                       sample_lognormal(*model, config.origin(), nominal,
                                        variances[v], config.sigma_ln, steps,
                                        max_k, config.dt, config.seed)});
  }
  columns.push_back({"cuniform", sample_cuniform(policy, config.origin(), steps,
                                                 max_k, config.seed)});

  auto out = open_out(out_path);
  out << "# seed=" << config.seed << " steps=" << steps << "\n";
  out << "samples";
  for (const Column& c : columns) out << ',' << c.name;
  out << '\n';
  for (int k : config.coverage_counts) {
    out << k;
    for (const Column& c : columns) {
      SampleBatch prefix;
      prefix.kind = c.batch.kind;
      prefix.seed = c.batch.seed;
      prefix.dt = c.batch.dt;
      prefix.trajectories.assign(c.batch.trajectories.begin(),
                                 c.batch.trajectories.begin() +
                                     std::min<std::size_t>(k, c.batch.trajectories.size()));
      const CoverageReport report = coverage(prefix, policy.grid, policy.levels);
      out << ',' << coverage_cell(report);
    }
    out << '\n';
  }
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int cmd_simulate(const ExperimentConfig& config, const std::string& policy_path,
                 const std::string& suite, const std::string& env_path,
                 const std::string& out_path) {
  const PolicyTable policy = load_compatible_policy(config, policy_path);
  const auto model = make_model(config.model);
  CostConfig cost = config.cost_config();

  struct Method {
    std::string name;
    SamplerSetup setup;
  };
  std::vector<Method> methods;
  {
    SamplerSetup mppi{SamplerKind::gaussian, nullptr, config.sigma_u,
                      config.sigma_ln, config.sample_count};
    SamplerSetup logmppi{SamplerKind::lognormal, nullptr, config.sigma_u,
                         config.sigma_ln, config.sample_count};
    SamplerSetup cuni{SamplerKind::cuniform, &policy, config.sigma_u,
                      config.sigma_ln, config.sample_count};
    methods = {{"mppi", mppi}, {"logmppi", logmppi}, {"cuniform", cuni}};
  }

  auto out = open_out(out_path);
  nlohmann::json runs_doc = nlohmann::json::array();

  if (suite == "sudden") {
    const std::vector<int> counts = {500, 1000};
    const std::vector<std::pair<std::string, double>> rows = {
        {"fully_visible", 0.0}, {"0.2", 0.2}, {"0.5", 0.5},
        {"0.8", 0.8},           {"1.0", 1.0}};
    out << "# seed=" << config.seed << " trials=20\n";
    out << "appearance_time";
    for (const Method& m : methods) {
      for (int k : counts) out << ',' << m.name << '_' << k;
    }
    out << '\n';
    for (const auto& [label, appearance] : rows) {
      out << label;
      for (const Method& m : methods) {
        for (int k : counts) {
          SuddenSuiteConfig suite_cfg;
          suite_cfg.appearance_time = appearance;
          SamplerSetup setup = m.setup;
          setup.count = k;
          const SuiteResult result = sudden_obstacle_suite(
              *model, setup, cost, suite_cfg, config.seed);
          out << ',' << result.success_rate;
          for (std::size_t i = 0; i < result.runs.size(); ++i) {
            nlohmann::json jr = nlohmann::json::parse(run_record_json(result.runs[i]));
            jr["method"] = m.name;
            jr["samples"] = k;
            jr["row"] = label;
            jr["trial"] = i;
            runs_doc.push_back(std::move(jr));
          }
        }
      }
      out << '\n';
      out.flush();
    }
  } else if (suite == "cluttered") {
    if (env_path.empty()) {
      throw ConfigError("cluttered suite needs --env (or environment in config)");
    }
    const Environment env = load_environment(env_path);
    const std::vector<int> counts = {500, 1000, 2500};
    out << "# seed=" << config.seed << " env=" << env_path << " starts=10\n";
    out << "samples";
    for (const Method& m : methods) out << ',' << m.name;
    out << '\n';
    for (int k : counts) {
      out << k;
      for (const Method& m : methods) {
        SamplerSetup setup = m.setup;
        setup.count = k;
        const SuiteResult result =
            cluttered_suite(*model, env, setup, cost, 10, config.seed);
        out << ',' << result.success_rate;
        for (std::size_t i = 0; i < result.runs.size(); ++i) {
          nlohmann::json jr = nlohmann::json::parse(run_record_json(result.runs[i]));
          jr["method"] = m.name;
          jr["samples"] = k;
          jr["trial"] = i;
          runs_doc.push_back(std::move(jr));
        }
      }
      out << '\n';
      out.flush();
    }
  } else {
    throw ConfigError("unknown suite: " + suite + " (expected sudden|cluttered)");
  }

  const std::string runs_path = out_path + ".runs.json";
  std::ofstream runs_out(runs_path);
  runs_out << runs_doc.dump(1) << '\n';
  std::printf("wrote %s and %s\n", out_path.c_str(), runs_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "C-Uniform trajectory sampling: level-set/max-flow policy precomputation "
      "and MPPI benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string policy_path;
  std::string out_path;
  std::string env_path;
  std::string suite = "sudden";
  std::int64_t seed_override = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--config", config_path, "experiment config JSON")->required();
    cmd->add_option("--seed", seed_override, "override the config seed");
    if (needs_out) {
      cmd->add_option("--out", out_path, "output file")->required();
    }
  };

  CLI::App* pre = app.add_subcommand(
      "precompute", "build level sets, solve per-level max flows, write the policy");
  add_common(pre, true);

  CLI::App* sample = app.add_subcommand(
      "sample", "draw a trajectory batch and export it as CSV/JSON");
  add_common(sample, true);
  sample->add_option("--policy", policy_path, "precomputed policy JSON");

  CLI::App* cover = app.add_subcommand(
      "coverage", "reachable-cell coverage table across samplers and batch sizes");
  add_common(cover, true);
  cover->add_option("--policy", policy_path, "precomputed policy JSON")->required();

  CLI::App* simulate = app.add_subcommand(
      "simulate", "closed-loop success-rate suites (sudden | cluttered)");
  add_common(simulate, true);
  simulate->add_option("--policy", policy_path, "precomputed policy JSON")->required();
  simulate->add_option("--suite", suite, "sudden | cluttered");
  simulate->add_option("--env", env_path, "environment JSON (cluttered suite)");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config = load_config(config_path);
    if (seed_override >= 0) {
      config.seed = static_cast<std::uint64_t>(seed_override);
    }
    if (env_path.empty()) env_path = config.environment_path;

    if (pre->parsed()) return cmd_precompute(config, out_path);
    if (sample->parsed()) return cmd_sample(config, policy_path, out_path);
    if (cover->parsed()) return cmd_coverage(config, policy_path, out_path);
    if (simulate->parsed()) {
      return cmd_simulate(config, policy_path, suite, env_path, out_path);
    }
  } catch (const PolicyMismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIncompatible;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const DeadLevelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
