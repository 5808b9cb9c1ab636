#include "lil/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "lil/error.hpp"

namespace lil {

namespace {

struct TypeInfo {
  std::string stage;
  std::vector<std::string_view> keys;
};

const std::map<std::string, TypeInfo>& type_table() {
  static const std::map<std::string, TypeInfo> table = {
      {"symbol", {"symbol", {"type", "xi", "method"}}},
      {"sector", {"symbol", {"type", "x_window", "xi"}}},
      {"kappa", {"symbol", {"type", "R"}}},
      {"norming", {"norming", {"type", "function", "args", "epsilon", "n"}}},
      {"upper_function_test", {"classify", {"type", "epsilon", "n", "t_max", "levels", "norming"}}},
      {"lower_tail_test", {"classify", {"type", "C", "v_exponent", "v_log_power", "t_max", "levels"}}},
      {"symbol_liminf_test",
       {"classify", {"type", "g_exponent", "w_exponent", "w_log_power", "w_loglog_power", "t_max", "levels"}}},
      {"simulate", {"simulate", {"type", "write_paths"}}},
      {"sup_probability", {"verify", {"type", "t", "R"}}},
      {"maximal_inequality", {"verify", {"type", "t", "R", "refine"}}},
      {"decay", {"verify", {"type", "R", "m_max"}}},
      {"spitzer", {"verify", {"type", "t"}}},
      {"etemadi", {"verify", {"type", "C", "v_exponent", "t"}}},
      {"charfn", {"verify", {"type", "xi", "t", "x_window", "epsilon"}}},
      {"chung", {"verify", {"type", "windows", "rate_alpha_shift"}}},
  };
  return table;
}

void check_keys(const Json& j, const std::string& path, const std::vector<std::string_view>& keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) throw Error(Errc::schema, path + "." + key + ": unknown key \"" + key + "\"");
  }
}

}  // namespace

const std::vector<std::string>& analysis_types() {
  static const std::vector<std::string> order = {
      "symbol", "sector", "kappa", "norming", "upper_function_test", "lower_tail_test", "symbol_liminf_test",
      "simulate", "sup_probability", "maximal_inequality", "decay", "spitzer", "etemadi", "charfn", "chung"};
  return order;
}

std::string analysis_stage(const std::string& type) {
  const auto it = type_table().find(type);
  if (it == type_table().end()) throw Error(Errc::schema, "unknown analysis type \"" + type + "\"");
  return it->second.stage;
}

Scenario parse_scenario(Json j, const ScenarioOverrides& ov) {
  if (!j.is_object()) throw Error(Errc::schema, "$: scenario must be a JSON object");
  if (ov.seed) j["seed"] = *ov.seed;
  if (ov.paths) j["ensemble"]["paths"] = *ov.paths;
  if (ov.steps) {
    if (!j.contains("grid")) throw Error(Errc::schema, "$.grid: --steps needs a grid section");
    const std::string layout = j["grid"].value("layout", "uniform");
    j["grid"][layout == "geometric" ? "points_per_level" : "steps"] = *ov.steps;
  }
  if (ov.output_dir) j["output_dir"] = *ov.output_dir;

  JsonObject top(j, "$", {"seed", "process", "x", "grid", "ensemble", "analyses", "output_dir"});
  // The output location does not change results, so it stays out of the hash.
  Json hashed = j;
  if (hashed.is_object()) hashed.erase("output_dir");
  Scenario s{.source = j, .hash = hex64(fnv1a64(canonical_dump(hashed))), .seed = top.unsigned_integer("seed"),
             .process = process_from_json(top.at("process"), "$.process")};

  if (top.has("x")) {
    const Json& x = top.at("x");
    if (x.is_number()) {
      s.anchors = {x.get<double>()};
    } else {
      s.anchors = top.numbers("x");
      if (s.anchors.empty()) top.fail("x", "needs at least one anchor");
    }
  } else {
    s.anchors = {0.0};
  }
  if (top.has("grid")) s.grid = grid_from_json(top.at("grid"), "$.grid");
  if (top.has("ensemble")) {
    JsonObject e(top.at("ensemble"), "$.ensemble", {"paths"});
    s.paths = e.unsigned_integer("paths");
  }
  s.output_dir = top.string_or("output_dir", "out");

  if (top.has("analyses")) {
    const Json& list = top.at("analyses");
    if (!list.is_array()) top.fail("analyses", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "$.analyses[" + std::to_string(i) + "]";
      const Json& a = list[i];
      if (!a.is_object() || !a.contains("type") || !a["type"].is_string()) {
        throw Error(Errc::schema, path + ".type: missing analysis type");
      }
      const std::string type = a["type"].get<std::string>();
      const auto it = type_table().find(type);
      if (it == type_table().end()) throw Error(Errc::schema, path + ".type: unknown analysis \"" + type + "\"");
      check_keys(a, path, it->second.keys);
      const std::string stage = it->second.stage;
      if ((stage == "simulate" || stage == "verify") && (!s.grid || s.paths == 0)) {
        throw Error(Errc::schema, path + ": simulation analyses need grid and ensemble.paths");
      }
      s.analyses.push_back({type, a, path});
    }
  }
  return s;
}

Scenario load_scenario(const std::string& file, const ScenarioOverrides& overrides) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::schema, "cannot open scenario file " + file);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::schema, std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(std::move(j), overrides);
}

}  // namespace lil
