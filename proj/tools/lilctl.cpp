// lilctl: scenario-driven front end.
//   exit 0 success, 1 numeric failure, 2 schema or usage error

#include <iostream>

#include "CLI11.hpp"
#include "lil/error.hpp"
#include "lil/report.hpp"

namespace {

struct Flags {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> steps;
  std::optional<std::string> out;
  bool canonical = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--scenario", f.scenario, "scenario JSON file")->required();
  sub->add_option("--seed", f.seed, "override the master seed");
  sub->add_option("--paths", f.paths, "override ensemble.paths");
  sub->add_option("--steps", f.steps, "override grid steps (points_per_level for geometric grids)");
  sub->add_option("--out", f.out, "override output_dir");
  sub->add_flag("--canonical-output", f.canonical, "omit timestamps so reports are byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-time LIL toolkit for Levy and Feller processes"};
  app.require_subcommand(1, 1);
  Flags flags;
  const char* commands[][2] = {
      {"symbol", "evaluate symbols, sector constants and kappa"},
      {"norming", "tabulate norming functions"},
      {"classify", "run the integral and liminf classifiers"},
      {"simulate", "simulate the path ensemble"},
      {"verify", "simulate and run the Monte Carlo checks"},
      {"report", "run every analysis in dependency order"},
  };
  for (const auto& c : commands) add_flags(app.add_subcommand(c[0], c[1]), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    lil::ScenarioOverrides ov{flags.seed, flags.paths, flags.steps, flags.out};
    const lil::Scenario s = lil::load_scenario(flags.scenario, ov);
    const lil::Json report = lil::run_scenario(s, {command, flags.canonical}, std::cerr);
    std::cout << "wrote " << s.output_dir << "/report.json (scenario " << s.hash << ", all_pass "
              << (report["all_pass"].get<bool>() ? "true" : "false") << ")\n";
    return 0;
  } catch (const lil::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == lil::Errc::schema ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
