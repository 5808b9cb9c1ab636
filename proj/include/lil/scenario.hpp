#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lil/serialize.hpp"

namespace lil {

/// One requested analysis; `params` has been checked against the key table of its type.
struct Analysis {
  std::string type;
  Json params;
  std::string path;  // "$.analyses[i]"
};

/// Command-line overrides applied before hashing.
struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> steps;
  std::optional<std::string> output_dir;
};

/// Top-level keys: seed (required), process, x, grid, ensemble {paths},
/// analyses [{type, ...}], output_dir.
struct Scenario {
  Json source;  // after overrides
  std::string hash;
  std::uint64_t seed = 0;
  ProcessSpec process;
  std::vector<double> anchors{};
  std::optional<PathGrid> grid{};
  std::size_t paths = 0;
  std::vector<Analysis> analyses{};
  std::string output_dir = "out";
};

/// Analysis types in execution order.
const std::vector<std::string>& analysis_types();

/// Stage of an analysis type: symbol, norming, classify, simulate or verify.
std::string analysis_stage(const std::string& type);

Scenario parse_scenario(Json j, const ScenarioOverrides& overrides = {});
Scenario load_scenario(const std::string& file, const ScenarioOverrides& overrides = {});

}  // namespace lil
