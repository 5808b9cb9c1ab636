#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lil/error.hpp"
#include "lil/report.hpp"
#include "lil/scenario.hpp"
#include "lil/serialize.hpp"

using namespace lil;
namespace fs = std::filesystem;

namespace {

std::string schema_message(const Json& j) {
  try {
    parse_scenario(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema);
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json minimal() {
  std::ifstream in(std::string(LIL_TEST_DATA) + "/minimal.json");
  return Json::parse(in);
}

}  // namespace

TEST(Json, MeasureAndProcessRoundTrip) {
  TabulatedMeasure t;
  t.y_min = 0.01;
  t.y_max = 3.0;
  t.density_pos = {1.0, 0.5, 0.25, 0.0};
  t.density_neg = {2.0, 1.0, 0.5, 0.1};
  t.symmetric = false;
  const std::vector<ProcessSpec> specs = {
      levy_process(LevyTriplet(Profile::constant(0.3), unit_stable(1.2))),
      levy_process(LevyTriplet(Profile::constant(-1.0), atomic({{1.0, 2.0}, {-0.5, 0.25}}))),
      levy_process(LevyTriplet(Profile::constant(0.0), tabulated(t, 2.0))),
      stable_like_process(LevyTriplet(Profile::tanh_ramp(0.0, 0.5, 2.0),
                                      power_law(Profile::affine_clamped(1.5, 0.1, 1.1, 1.9),
                                                PowerLawScale{PowerLawScale::Kind::profile,
                                                              Profile::sinusoidal(1.0, 0.2, 2.0, 0.1)},
                                                0.5))),
  };
  for (const auto& s : specs) {
    const Json j = to_json(s);
    EXPECT_EQ(to_json(process_from_json(j, "$")), j) << j.dump();
  }
}

TEST(Json, GridRoundTrip) {
  for (const auto& g : {PathGrid::uniform(2.0, 64), PathGrid::geometric(0.01, 5, 8)}) {
    const auto back = grid_from_json(to_json(g), "$");
    EXPECT_EQ(back.times(), g.times());
  }
}

TEST(Json, UnknownKeyNamesItsPath) {
  Json j = minimal();
  j["process"]["measure"]["truncaton_radius"] = 1.0;
  const auto msg = schema_message(j);
  EXPECT_NE(msg.find("$.process.measure.truncaton_radius"), std::string::npos) << msg;

  Json k = minimal();
  k["analyses"][1]["argz"] = 1;
  EXPECT_NE(schema_message(k).find("$.analyses[1].argz"), std::string::npos);

  Json u = minimal();
  u["analyses"][0]["type"] = "nonsense";
  EXPECT_NE(schema_message(u).find("$.analyses[0].type"), std::string::npos);

  Json v = minimal();
  v["analyses"].push_back({{"type", "spitzer"}, {"t", {1.0}}});
  EXPECT_NE(schema_message(v).find("grid"), std::string::npos);
}

TEST(Json, OverridesChangeTheHash) {
  const auto a = parse_scenario(minimal());
  const auto b = parse_scenario(minimal());
  EXPECT_EQ(a.hash, b.hash);
  ScenarioOverrides ov;
  ov.seed = 43;
  const auto c = parse_scenario(minimal(), ov);
  EXPECT_EQ(c.seed, 43u);
  EXPECT_NE(c.hash, a.hash);
}

TEST(Json, NonFiniteNumbersAreStrings) {
  ProbabilityEstimate p{std::numeric_limits<double>::infinity(), 0.0, 3};
  EXPECT_EQ(to_json(p)["p_hat"], Json("inf"));
}

TEST(Ensemble, JsonlRoundTripIsExact) {
  const auto grid = PathGrid::uniform(1.0, 32);
  const auto ens = simulate_ensemble({levy_process(LevyTriplet(Profile::constant(0.0), unit_stable(1.5))), 0.25,
                                      grid, 9, 20, record_indices_for(grid, {0.5, 1.0})});
  std::stringstream ss;
  write_ensemble_jsonl(ens, ss);
  const auto back = read_ensemble_jsonl(ss);
  EXPECT_TRUE(back == ens);
  EXPECT_EQ(back.x0(), 0.25);
  EXPECT_EQ(ensemble_spec_hash(back), ensemble_spec_hash(ens));

  std::string text = ss.str();
  text.replace(text.find("\"x0\":0.25"), 9, "\"x0\":0.5");
  std::stringstream bad(text);
  EXPECT_THROW(read_ensemble_jsonl(bad), Error);
}

TEST(Hash, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(Report, CanonicalOutputIsByteIdentical) {
  const fs::path base = fs::temp_directory_path() / "lil_report_test";
  fs::remove_all(base);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    ScenarioOverrides ov;
    ov.output_dir = (base / std::to_string(run)).string();
    const auto s = parse_scenario(minimal(), ov);
    std::ostringstream log;
    const Json r = run_scenario(s, {"report", true}, log);
    EXPECT_TRUE(r.contains("scenario_hash"));
    EXPECT_FALSE(r.contains("generated_at"));
    const auto text = slurp(base / std::to_string(run) / "report.json");
    if (run == 0) {
      first = text;
    } else {
      EXPECT_EQ(text, first);
    }
  }
  const auto csv = slurp(base / "0" / "a00_symbol.csv");
  EXPECT_EQ(csv.rfind("# scenario_hash=", 0), 0u);
  EXPECT_EQ(stages_for("verify"), (std::vector<std::string>{"simulate", "verify"}));
  EXPECT_THROW(stages_for("bogus"), Error);
  fs::remove_all(base);
}
