#include "casimir/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace casimir {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected a table");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + (where.empty() ? "" : ".") + it.key() + ": unknown field");
}

template <class T>
void read(const json& j, const std::string& key, const std::string& where, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError((where.empty() ? "" : where + ".") + key + ": wrong type");
  }
}

}  // namespace

BoundaryCondition parse_bc(const std::string& s) {
  if (s == "D" || s == "Dirichlet") return BoundaryCondition::Dirichlet;
  if (s == "N" || s == "Neumann") return BoundaryCondition::Neumann;
  if (s == "EM" || s == "EM2D") return BoundaryCondition::EM2D;
  throw ConfigError("bc: expected D, N or EM, got '" + s + "'");
}

ScenarioConfig parse_config(const json& j, bool allow_continuation) {
  only_keys(j, "", {"scenario", "bc", "geometry", "needle", "sweep", "n_max", "grid", "threads",
                    "allow_continuation", "cross_check"});
  ScenarioConfig c;
  if (!j.contains("scenario")) throw ConfigError("scenario: missing");
  read(j, "scenario", "", c.scenario_id);
  if (c.scenario_id == "edge_needle" || c.scenario_id == "gap_repulsion") c.bc = BoundaryCondition::EM2D;
  if (j.contains("bc")) {
    std::string bc;
    read(j, "bc", "", bc);
    c.bc = parse_bc(bc);
  }
  if (j.contains("geometry")) {
    const auto& g = j["geometry"];
    only_keys(g, "geometry", {"dim", "d", "D", "phi1", "phi2", "h", "d1", "d2", "phi0", "theta0", "L"});
    read(g, "dim", "geometry", c.dim);
    read(g, "d", "geometry", c.d);
    read(g, "D", "geometry", c.D);
    read(g, "phi1", "geometry", c.phi1);
    read(g, "phi2", "geometry", c.phi2);
    read(g, "h", "geometry", c.h);
    read(g, "d1", "geometry", c.d1);
    read(g, "d2", "geometry", c.d2);
    read(g, "phi0", "geometry", c.phi0);
    read(g, "theta0", "geometry", c.theta0);
    read(g, "L", "geometry", c.L);
  }
  if (j.contains("needle")) {
    const auto& n = j["needle"];
    only_keys(n, "needle", {"t00", "txx", "tyy", "orientation"});
    read(n, "t00", "needle", c.t00);
    read(n, "txx", "needle", c.txx);
    read(n, "tyy", "needle", c.tyy);
    read(n, "orientation", "needle", c.needle);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    only_keys(s, "sweep", {"param", "from", "to", "steps"});
    read(s, "param", "sweep", c.sweep.param);
    read(s, "from", "sweep", c.sweep.lo);
    read(s, "to", "sweep", c.sweep.hi);
    read(s, "steps", "sweep", c.sweep.steps);
  }
  read(j, "n_max", "", c.n_max);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    only_keys(g, "grid", {"alpha", "p", "map_scale"});
    read(g, "alpha", "grid", c.grid_alpha);
    read(g, "p", "grid", c.grid_p);
    read(g, "map_scale", "grid", c.map_scale);
  }
  read(j, "threads", "", c.threads);
  read(j, "allow_continuation", "", c.allow_continuation);
  c.allow_continuation = c.allow_continuation || allow_continuation;
  read(j, "cross_check", "", c.cross_check);
  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::string& path, std::string* raw_text, bool allow_continuation) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (raw_text) *raw_text = ss.str();
  json j;
  try {
    j = json::parse(ss.str(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j, allow_continuation);
}

json config_to_json(const ScenarioConfig& c) {
  const char* bc = c.bc == BoundaryCondition::Dirichlet ? "D" : c.bc == BoundaryCondition::Neumann ? "N" : "EM";
  json j = {{"scenario", c.scenario_id},
            {"bc", bc},
            {"geometry",
             {{"dim", c.dim}, {"d", c.d}, {"D", c.D}, {"phi1", c.phi1}, {"phi2", c.phi2}, {"h", c.h}, {"d1", c.d1},
              {"d2", c.d2}, {"phi0", c.phi0}, {"theta0", c.theta0}, {"L", c.L}}},
            {"needle", {{"t00", c.t00}, {"txx", c.txx}, {"tyy", c.tyy}, {"orientation", c.needle}}},
            {"n_max", c.n_max},
            {"grid", {{"alpha", c.grid_alpha}, {"p", c.grid_p}, {"map_scale", c.map_scale}}},
            {"threads", c.threads},
            {"allow_continuation", c.allow_continuation},
            {"cross_check", c.cross_check}};
  if (!c.sweep.param.empty())
    j["sweep"] = {{"param", c.sweep.param}, {"from", c.sweep.lo}, {"to", c.sweep.hi}, {"steps", c.sweep.steps}};
  return j;
}

std::string checksum(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace casimir
