#include <doctest.h>

#include "casimir/config.hpp"

using namespace casimir;
using nlohmann::json;

TEST_CASE("config parsing") {
  json j = json::parse(R"({"scenario": "three_halfplates", "bc": "N",
                           "geometry": {"h": 0.5, "d1": 1.0},
                           "sweep": {"param": "h", "from": -1, "to": 1, "steps": 5},
                           "n_max": 3, "grid": {"alpha": 64}})");
  auto c = parse_config(j);
  CHECK(c.scenario_id == "three_halfplates");
  CHECK(c.bc == BoundaryCondition::Neumann);
  CHECK(c.h == 0.5);
  CHECK(c.sweep.values().size() == 5);
  CHECK(c.grid_alpha == 64);
  auto back = parse_config(config_to_json(c));
  CHECK(back.sweep.hi == 1.0);
  CHECK(back.n_max == 3);
}

TEST_CASE("config errors name the field") {
  auto msg = [](const char* text) {
    try {
      parse_config(json::parse(text));
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(R"({"scenario": "two_halfplates", "colour": 1})").find("colour") != std::string::npos);
  CHECK(msg(R"({"scenario": "two_halfplates", "geometry": {"phi1": "x"}})").find("geometry.phi1") != std::string::npos);
  CHECK(msg(R"({"scenario": "two_halfplates", "geometry": {"phi1": 2.0}})").find("range of validity") != std::string::npos);
  CHECK(msg(R"({"geometry": {}})").find("scenario") != std::string::npos);
  CHECK(msg(R"({"scenario": "two_halfplates", "bc": "X"})").find("bc") != std::string::npos);
  CHECK(msg(R"({"scenario": "two_halfplates", "geometry": {"phi1": 2.0}, "allow_continuation": true})").empty());
}

TEST_CASE("checksum is stable") {
  CHECK(checksum("") == "cbf29ce484222325");
  CHECK(checksum("abc") == checksum("abc"));
  CHECK(checksum("abc") != checksum("abd"));
}
