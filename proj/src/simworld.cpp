#include "cuniform/simworld.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "cuniform/errors.hpp"

namespace cuniform {

bool collision(const State& s, const Environment& env, double clock) {
  const double x = s[0];
  const double y = s.size() > 1 ? s[1] : 0.0;
  for (const Obstacle& obs : env.obstacles) {
    if (obs.appearance_time > clock) continue;
    if (const Circle* c = std::get_if<Circle>(&obs.shape)) {
      const double dx = x - c->cx;
      const double dy = y - c->cy;
      if (dx * dx + dy * dy <= c->radius * c->radius) return true;
    } else {
      const RectObstacle& r = std::get<RectObstacle>(obs.shape);
      if (x >= r.min_x && x < r.max_x && y >= r.min_y && y < r.max_y) {
        return true;
      }
    }
  }
  return false;
}

Environment load_environment(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open environment file: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad environment file " + path + ": " + e.what());
  }
  Environment env;
  try {
    for (const auto& jo : doc.value("obstacles", nlohmann::json::array())) {
      Obstacle obs;
      obs.appearance_time = jo.value("appearance_time", 0.0);
      const std::string kind = jo.at("kind").get<std::string>();
      if (kind == "circle") {
        Circle c;
        c.cx = jo.at("center").at(0).get<double>();
        c.cy = jo.at("center").at(1).get<double>();
        c.radius = jo.at("radius").get<double>();
        obs.shape = c;
      } else if (kind == "rect") {
        RectObstacle r;
        r.min_x = jo.at("min").at(0).get<double>();
        r.min_y = jo.at("min").at(1).get<double>();
        r.max_x = jo.at("max").at(0).get<double>();
        r.max_y = jo.at("max").at(1).get<double>();
        obs.shape = r;
      } else {
        throw ConfigError("unknown obstacle kind: " + kind);
      }
      env.obstacles.push_back(obs);
    }
    env.goal_x = doc.at("goal").at(0).get<double>();
    env.goal_y = doc.at("goal").at(1).get<double>();
    if (doc.contains("bounds")) {
      env.bounds_min_x = doc["bounds"].at("min").at(0).get<double>();
      env.bounds_min_y = doc["bounds"].at("min").at(1).get<double>();
      env.bounds_max_x = doc["bounds"].at("max").at(0).get<double>();
      env.bounds_max_y = doc["bounds"].at("max").at(1).get<double>();
    }
    env.time_limit = doc.value("time_limit", 60.0);
    if (doc.contains("start_region")) {
      StartRegion region;
      region.cx = doc["start_region"].at("center").at(0).get<double>();
      region.cy = doc["start_region"].at("center").at(1).get<double>();
      region.radius = doc["start_region"].at("radius").get<double>();
      env.start_region = region;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad environment file " + path + ": " + e.what());
  }
  return env;
}

void save_environment(const Environment& env, const std::string& path) {
  nlohmann::json doc;
  auto& obstacles = doc["obstacles"] = nlohmann::json::array();
  for (const Obstacle& obs : env.obstacles) {
    nlohmann::json jo;
    jo["appearance_time"] = obs.appearance_time;
    if (const Circle* c = std::get_if<Circle>(&obs.shape)) {
      jo["kind"] = "circle";
      jo["center"] = {c->cx, c->cy};
      jo["radius"] = c->radius;
    } else {
      const RectObstacle& r = std::get<RectObstacle>(obs.shape);
      jo["kind"] = "rect";
      jo["min"] = {r.min_x, r.min_y};
      jo["max"] = {r.max_x, r.max_y};
    }
    obstacles.push_back(std::move(jo));
  }
  doc["goal"] = {env.goal_x, env.goal_y};
  doc["bounds"]["min"] = {env.bounds_min_x, env.bounds_min_y};
  doc["bounds"]["max"] = {env.bounds_max_x, env.bounds_max_y};
  doc["time_limit"] = env.time_limit;
  if (env.start_region) {
    doc["start_region"]["center"] = {env.start_region->cx, env.start_region->cy};
    doc["start_region"]["radius"] = env.start_region->radius;
  }
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write environment file: " + path);
  }
  out << doc.dump(2) << '\n';
}

CoverageReport coverage(const SampleBatch& batch, const GridSpec& grid,
                        std::span<const LevelSet> levels) {
  CoverageReport report;
  report.kind = batch.kind;
  report.trajectory_count = static_cast<int>(batch.trajectories.size());

  std::size_t horizon = 0;
  for (const Trajectory& traj : batch.trajectories) {
    horizon = std::max(horizon, traj.states.size());
  }
  if (horizon > levels.size()) {
    throw std::invalid_argument("coverage: batch horizon exceeds level horizon");
  }

  std::vector<std::vector<char>> visited(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    visited[t].assign(levels[t].cells.size(), 0);
    report.total_reachable += levels[t].size();
  }
  std::unordered_set<CellIndex, CellIndexHash> union_cells;

  report.per_level.assign(horizon, 0);
  for (const Trajectory& traj : batch.trajectories) {
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
      CellIndex cell;
      if (!grid.try_cell_of(traj.states[t], cell)) {
        ++report.off_level_states;
        continue;
      }
      union_cells.insert(cell);
      const std::int32_t pos = levels[t].position_of(cell);
      if (pos < 0) {
        ++report.off_level_states;
        continue;
      }
      if (!visited[t][pos]) {
        visited[t][pos] = 1;
        ++report.per_level[t];
        ++report.covered;
      }
    }
  }
  report.covered_union = static_cast<std::int64_t>(union_cells.size());
  report.percent = report.total_reachable > 0
                       ? 100.0 * static_cast<double>(report.covered) /
                             static_cast<double>(report.total_reachable)
                       : 0.0;
  return report;
}

}  // namespace cuniform
