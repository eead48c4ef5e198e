#include "cuniform/policy_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cuniform/errors.hpp"

namespace cuniform {

namespace {

std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string prob_string(const ActionProb& p) {
  if (p.den > 0) {
    return std::to_string(p.num) + "/" + std::to_string(p.den);
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", p.p);
  return buf;
}

ActionProb parse_prob(std::int32_t action, const std::string& text) {
  ActionProb p;
  p.action = action;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    p.num = std::stoll(text.substr(0, slash));
    p.den = std::stoll(text.substr(slash + 1));
    if (p.den <= 0) throw ConfigError("policy file: bad rational " + text);
    p.p = static_cast<double>(p.num) / static_cast<double>(p.den);
  } else {
    p.num = 0;
    p.den = 0;
    p.p = std::stod(text);
  }
  return p;
}

}  // namespace

void save_policy(const PolicyTable& table, const std::string& path) {
  nlohmann::json doc;
  doc["format_version"] = kPolicyFormatVersion;
  doc["kind"] = "cuniform-policy";
  doc["compat_hash"] = hash_string(table.compat_hash());
  doc["model"]["kind"] = table.model.kind;
  doc["model"]["speed"] = table.model.speed;
  doc["model"]["control_bounds"] = {table.model.control.lo,
                                    table.model.control.hi};
  auto& jgrid = doc["grid"];
  jgrid["delta"] = nlohmann::json::array();
  jgrid["lower"] = nlohmann::json::array();
  jgrid["upper"] = nlohmann::json::array();
  jgrid["angular"] = nlohmann::json::array();
  for (const GridDim& d : table.grid.dims()) {
    jgrid["delta"].push_back(d.cell_size);
    jgrid["lower"].push_back(d.lower);
    jgrid["upper"].push_back(d.upper);
    jgrid["angular"].push_back(d.angular);
  }
  doc["dt"] = table.dt;
  doc["horizon"] = table.horizon;
  doc["seed"] = table.seed;
  doc["samples_per_cell"] = table.samples_per_cell;
  auto& jactions = doc["actions"] = nlohmann::json::array();
  for (const ControlInput& u : table.actions) {
    nlohmann::json ju = nlohmann::json::array();
    for (int d = 0; d < u.size(); ++d) ju.push_back(u[d]);
    jactions.push_back(std::move(ju));
  }

  auto& jlevels = doc["levels"] = nlohmann::json::array();
  for (int t = 0; t < static_cast<int>(table.levels.size()); ++t) {
    nlohmann::json jl;
    jl["t"] = t;
    auto& cells = jl["cells"] = nlohmann::json::array();
    for (const CellIndex& c : table.levels[t].cells) {
      nlohmann::json jc = nlohmann::json::array();
      for (int d = 0; d < c.dim; ++d) jc.push_back(c.idx[d]);
      cells.push_back(std::move(jc));
    }
    if (t < table.horizon) {
      const LevelPolicy& policy = table.policies[t];
      auto& probs = jl["probs"] = nlohmann::json::array();
      for (const ActionDistribution& dist : policy.cells) {
        nlohmann::json jd = nlohmann::json::array();
        for (const ActionProb& p : dist.entries) {
          jd.push_back({p.action, prob_string(p)});
        }
        probs.push_back(std::move(jd));
      }
      const LevelStats& stats = table.stats[t];
      auto& js = jl["stats"];
      js["cells"] = stats.cells;
      js["edges"] = stats.edges;
      js["flow_value"] = stats.flow_value;
      js["flow_target"] = stats.flow_target;
      js["deficit"] = stats.deficit;
      js["oob_dropped"] = stats.dropped_out_of_bounds;
      jl["fallback_cells"] = policy.fallback_cells;
    }
    jlevels.push_back(std::move(jl));
  }

  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write policy file: " + path);
  }
  out << doc.dump(1) << '\n';
}

PolicyTable load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open policy file: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad policy file " + path + ": " + e.what());
  }

  PolicyTable table;
  try {
    if (doc.at("format_version").get<int>() != kPolicyFormatVersion ||
        doc.value("kind", std::string()) != "cuniform-policy") {
      throw ConfigError("policy file " + path + ": unsupported format");
    }
    table.model.kind = doc["model"].at("kind").get<std::string>();
    table.model.speed = doc["model"].at("speed").get<double>();
    table.model.control.lo = doc["model"].at("control_bounds").at(0).get<double>();
    table.model.control.hi = doc["model"].at("control_bounds").at(1).get<double>();

    std::vector<GridDim> dims;
    const auto& jgrid = doc.at("grid");
    for (std::size_t d = 0; d < jgrid.at("delta").size(); ++d) {
      GridDim dim;
      dim.cell_size = jgrid["delta"].at(d).get<double>();
      dim.lower = jgrid["lower"].at(d).get<double>();
      dim.upper = jgrid["upper"].at(d).get<double>();
      dim.angular = jgrid["angular"].at(d).get<bool>();
      dims.push_back(dim);
    }
    table.grid = GridSpec(dims);

    table.dt = doc.at("dt").get<double>();
    table.horizon = doc.at("horizon").get<int>();
    table.seed = doc.at("seed").get<std::uint64_t>();
    table.samples_per_cell = doc.at("samples_per_cell").get<int>();
    for (const auto& ju : doc.at("actions")) {
      ControlInput u = ControlInput::zeros(static_cast<int>(ju.size()));
      for (int d = 0; d < u.size(); ++d) u[d] = ju.at(d).get<double>();
      table.actions.push_back(u);
    }

    const auto& jlevels = doc.at("levels");
    if (static_cast<int>(jlevels.size()) != table.horizon + 1) {
      throw ConfigError("policy file " + path + ": level count mismatch");
    }
    for (int t = 0; t <= table.horizon; ++t) {
      const auto& jl = jlevels.at(t);
      std::vector<CellIndex> cells;
      cells.reserve(jl.at("cells").size());
      for (const auto& jc : jl["cells"]) {
        CellIndex c;
        c.dim = static_cast<std::int32_t>(jc.size());
        for (int d = 0; d < c.dim; ++d) c.idx[d] = jc.at(d).get<std::int32_t>();
        if (!cells.empty() && !(cells.back() < c)) {
          throw ConfigError("policy file " + path + ": cells not sorted");
        }
        cells.push_back(c);
      }
      table.levels.push_back(LevelSet::from_cells(t, std::move(cells)));

      if (t < table.horizon) {
        LevelPolicy policy;
        const auto& jprobs = jl.at("probs");
        if (jprobs.size() != table.levels[t].cells.size()) {
          throw ConfigError("policy file " + path + ": probs/cells mismatch");
        }
        policy.cells.reserve(jprobs.size());
        for (const auto& jd : jprobs) {
          ActionDistribution dist;
          for (const auto& jp : jd) {
            dist.entries.push_back(parse_prob(jp.at(0).get<std::int32_t>(),
                                              jp.at(1).get<std::string>()));
          }
          policy.cells.push_back(std::move(dist));
        }
        const auto& js = jl.at("stats");
        LevelStats stats;
        stats.cells = js.at("cells").get<std::int64_t>();
        stats.edges = js.at("edges").get<std::int64_t>();
        stats.flow_value = js.at("flow_value").get<std::int64_t>();
        stats.flow_target = js.at("flow_target").get<std::int64_t>();
        stats.deficit = js.at("deficit").get<double>();
        stats.dropped_out_of_bounds = js.at("oob_dropped").get<std::int64_t>();
        policy.flow_value = stats.flow_value;
        policy.flow_target = stats.flow_target;
        policy.deficit = stats.deficit;
        policy.fallback_cells =
            jl.value("fallback_cells", std::vector<std::int32_t>());
        table.stats.push_back(stats);
        table.policies.push_back(std::move(policy));
      }
    }

    const std::string stored = doc.at("compat_hash").get<std::string>();
    if (stored != hash_string(table.compat_hash())) {
      throw PolicyMismatchError("policy file " + path +
                                ": stored hash does not match contents");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const PolicyMismatchError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad policy file " + path + ": " + e.what());
  }
  return table;
}

}  // namespace cuniform
