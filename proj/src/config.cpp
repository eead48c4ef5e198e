#include "cuniform/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cuniform/errors.hpp"

namespace cuniform {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int ExperimentConfig::horizon_steps() const {
  const double ratio = horizon_s / dt;
  const double rounded = std::round(ratio);
  if (!(dt > 0.0) || std::abs(ratio - rounded) > 1e-9 || rounded < 1.0) {
    throw ConfigError("horizon T must be an exact multiple of dt");
  }
  return static_cast<int>(rounded);
}

std::vector<ControlInput> ExperimentConfig::actions() const {
  return uniform_actions(model.control, action_count);
}

State ExperimentConfig::origin() const {
  if (model.kind == "walker") return State{0.0};
  return State{0.0, 0.0, 0.0};
}

CostConfig ExperimentConfig::cost_config() const {
  CostConfig cost;
  cost.lambda = lambda;
  cost.horizon_s = horizon_s;
  cost.dt = dt;
  cost.goal_tolerance = goal_tolerance;
  return cost;
}

GridSpec default_walker_grid() {
  return GridSpec{{{1.0, -30.5, 30.5, false}}};
}

GridSpec default_dubins_grid() {
  const double delta_xy = 0.1;
  const double delta_theta = kTwoPi / 36.0;
  // Half-cell offsets put a cell center exactly on (0, 0, 0).
  const double extent = 10.0 + 0.5 * delta_xy;
  return GridSpec{{{delta_xy, -extent, extent, false},
                   {delta_xy, -extent, extent, false},
                   {delta_theta, -0.5 * delta_theta, kTwoPi - 0.5 * delta_theta,
                    true}}};
}

namespace {

GridSpec default_grid_for(const ModelSpec& model) {
  if (model.kind == "walker") return default_walker_grid();
  if (model.kind == "dubins") return default_dubins_grid();
  throw ConfigError("no default grid for model kind: " + model.kind);
}

ModelSpec default_model(const std::string& kind) {
  ModelSpec model;
  model.kind = kind;
  if (kind == "walker") {
    model.speed = 0.0;
    model.control = {-1.0, 1.0};
  } else {
    model.speed = 1.0;
    model.control = {-1.5, 1.5};
  }
  return model;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }

  ExperimentConfig config;
  try {
    config.seed = doc.value("seed", std::uint64_t{1});

    const auto jmodel = doc.value("model", nlohmann::json::object());
    const std::string kind = jmodel.value("kind", std::string("dubins"));
    if (kind != "walker" && kind != "dubins") {
      throw ConfigError("model.kind must be walker or dubins");
    }
    config.model = default_model(kind);
    if (jmodel.contains("speed")) config.model.speed = jmodel["speed"].get<double>();
    if (jmodel.contains("control_bounds")) {
      config.model.control.lo = jmodel["control_bounds"].at(0).get<double>();
      config.model.control.hi = jmodel["control_bounds"].at(1).get<double>();
    }
    config.action_count =
        jmodel.value("action_count", kind == "walker" ? 3 : 21);
    if (config.action_count < 1) {
      throw ConfigError("model.action_count must be >= 1");
    }

    if (doc.contains("grid")) {
      const auto& jgrid = doc["grid"];
      std::vector<GridDim> dims;
      const auto& delta = jgrid.at("delta");
      const auto& lower = jgrid.at("lower");
      const auto& upper = jgrid.at("upper");
      const auto angular = jgrid.value("angular", nlohmann::json::array());
      for (std::size_t d = 0; d < delta.size(); ++d) {
        GridDim dim;
        dim.cell_size = delta.at(d).get<double>();
        dim.lower = lower.at(d).get<double>();
        dim.upper = upper.at(d).get<double>();
        dim.angular = d < angular.size() && angular.at(d).get<bool>();
        dims.push_back(dim);
      }
      config.grid = GridSpec(dims);
    } else {
      config.grid = default_grid_for(config.model);
    }
    const int expected_dim = config.model.kind == "walker" ? 1 : 3;
    if (config.grid.dim() != expected_dim) {
      throw ConfigError("grid dimension does not match the model state");
    }

    const auto jhorizon = doc.value("horizon", nlohmann::json::object());
    config.horizon_s =
        jhorizon.value("T", kind == "walker" ? 10.0 : 3.0);
    config.dt = jhorizon.value("dt", kind == "walker" ? 1.0 : 0.2);

    const auto jsampler = doc.value("sampler", nlohmann::json::object());
    config.sampler_kind =
        sampler_kind_from(jsampler.value("kind", std::string("cuniform")));
    config.sigma_u = jsampler.value("sigma_u", 0.3);
    config.sigma_ln = jsampler.value("sigma_ln", 0.5);
    config.sample_count = jsampler.value("count", 500);
    config.samples_per_cell = jsampler.value("samples_per_cell", 1);
    if (config.sample_count < 1 || config.samples_per_cell < 1) {
      throw ConfigError("sampler.count and samples_per_cell must be >= 1");
    }

    const auto jcontroller = doc.value("controller", nlohmann::json::object());
    config.lambda = jcontroller.value("lambda", 0.567);
    config.goal_tolerance = jcontroller.value("goal_tolerance", 0.5);
    if (!(config.lambda > 0.0)) {
      throw ConfigError("controller.lambda must be positive");
    }

    const auto jcoverage = doc.value("coverage", nlohmann::json::object());
    if (jcoverage.contains("sample_counts")) {
      config.coverage_counts =
          jcoverage["sample_counts"].get<std::vector<int>>();
    }
    config.coverage_steps = jcoverage.value("steps", 10);
    config.coverage_seeds = jcoverage.value("paired_seeds", 5);

    config.environment_path = doc.value("environment", std::string());
    if (!config.environment_path.empty() &&
        !std::filesystem::exists(config.environment_path)) {
      throw ConfigError("environment file does not exist: " +
                        config.environment_path);
    }

    config.horizon_steps();  // validates T/dt
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }
  return config;
}

std::string config_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["seed"] = config.seed;
  doc["model"]["kind"] = config.model.kind;
  doc["model"]["speed"] = config.model.speed;
  doc["model"]["control_bounds"] = {config.model.control.lo,
                                    config.model.control.hi};
  doc["model"]["action_count"] = config.action_count;
  auto& jgrid = doc["grid"];
  jgrid["delta"] = nlohmann::json::array();
  jgrid["lower"] = nlohmann::json::array();
  jgrid["upper"] = nlohmann::json::array();
  jgrid["angular"] = nlohmann::json::array();
  for (const GridDim& d : config.grid.dims()) {
    jgrid["delta"].push_back(d.cell_size);
    jgrid["lower"].push_back(d.lower);
    jgrid["upper"].push_back(d.upper);
    jgrid["angular"].push_back(d.angular);
  }
  doc["horizon"]["T"] = config.horizon_s;
  doc["horizon"]["dt"] = config.dt;
  doc["sampler"]["kind"] = to_string(config.sampler_kind);
  doc["sampler"]["sigma_u"] = config.sigma_u;
  doc["sampler"]["sigma_ln"] = config.sigma_ln;
  doc["sampler"]["count"] = config.sample_count;
  doc["sampler"]["samples_per_cell"] = config.samples_per_cell;
  doc["controller"]["lambda"] = config.lambda;
  doc["controller"]["goal_tolerance"] = config.goal_tolerance;
  doc["coverage"]["sample_counts"] = config.coverage_counts;
  doc["coverage"]["steps"] = config.coverage_steps;
  doc["coverage"]["paired_seeds"] = config.coverage_seeds;
  doc["environment"] = config.environment_path;
  return doc.dump(2) + "\n";
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write config file: " + path);
  }
  out << config_json(config);
}

}  // namespace cuniform
