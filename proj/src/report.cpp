#include "lil/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lil/error.hpp"

namespace lil {

void write_file_atomic(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::precondition, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(Errc::precondition, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::vector<std::string> stages_for(const std::string& command) {
  if (command == "symbol") return {"symbol"};
  if (command == "norming") return {"norming"};
  if (command == "classify") return {"classify"};
  if (command == "simulate") return {"simulate"};
  if (command == "verify") return {"simulate", "verify"};
  if (command == "report") return {"symbol", "norming", "classify", "simulate", "verify"};
  throw Error(Errc::schema, "unknown command \"" + command + "\"");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const Scenario& s, std::initializer_list<std::string_view> columns) {
    os_ << "# scenario_hash=" << s.hash << " seed=" << s.seed << '\n';
    bool first = true;
    for (auto c : columns) {
      os_ << (first ? "" : ",") << c;
      first = false;
    }
    os_ << '\n';
  }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      os_ << (first ? "" : ",") << fmt(v);
      first = false;
    }
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return g;
}

Interval window_param(const JsonObject& p, double anchor) {
  if (!p.has("x_window")) return {anchor - 1.0, anchor + 1.0};
  const auto w = p.numbers("x_window");
  if (w.size() != 2 || w[0] > w[1]) p.fail("x_window", "expected [lo, hi] with lo <= hi");
  return {w[0], w[1]};
}

class Runner {
 public:
  Runner(const Scenario& s, const RunOptions& o, std::ostream& log) : s_(s), opt_(o), log_(log) {}

  Json run() {
    const auto stages = stages_for(opt_.command);
    std::filesystem::create_directories(s_.output_dir);
    Json results = Json::array();
    bool all_pass = true;
    for (const auto& stage : stages) {
      if (stage == "simulate" && needs_ensemble(stages)) ensure_ensemble();
      for (std::size_t i = 0; i < s_.analyses.size(); ++i) {
        const Analysis& a = s_.analyses[i];
        if (analysis_stage(a.type) != stage) continue;
        char name[64];
        std::snprintf(name, sizeof name, "a%02zu_%s.csv", i, a.type.c_str());
        log_ << "[" << stage << "] " << a.type << '\n';
        Json r = dispatch(a, name);
        r["type"] = a.type;
        r["csv"] = name;
        if (r.contains("pass") && !r["pass"].get<bool>()) all_pass = false;
        results.push_back(std::move(r));
      }
    }
    Json report = {{"scenario_hash", s_.hash},
                   {"seed", s_.seed},
                   {"command", opt_.command},
                   {"provenance", provenance()},
                   {"analyses", results},
                   {"all_pass", all_pass}};
    if (!opt_.canonical_output) report["generated_at"] = timestamp();
    write_file_atomic(std::filesystem::path(s_.output_dir) / "report.json", report.dump(2) + "\n");
    return report;
  }

 private:
  bool needs_ensemble(const std::vector<std::string>& stages) const {
    for (const auto& a : s_.analyses) {
      const auto st = analysis_stage(a.type);
      if ((st == "simulate" || st == "verify") &&
          std::find(stages.begin(), stages.end(), st) != stages.end()) {
        return true;
      }
    }
    return false;
  }

  Json provenance() const {
    Json p = {{"seed", s_.seed}, {"process", to_json(s_.process)}, {"x", s_.anchors}};
    if (s_.grid) p["grid"] = to_json(*s_.grid);
    if (s_.paths) p["paths"] = s_.paths;
    return p;
  }

  static std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  void write_csv(const std::string& name, const Csv& csv) {
    write_file_atomic(std::filesystem::path(s_.output_dir) / name, csv.str());
  }

  const LevyMeasureSpec& measure() const { return s_.process.triplet.measure(); }
  double x0() const { return s_.anchors.front(); }

  void ensure_ensemble() {
    if (ensemble_) return;
    EnsembleRequest req{s_.process, x0(), *s_.grid, s_.seed, s_.paths, {}};
    ensemble_ = simulate_ensemble(req);
  }

  const PathEnsemble& ens() {
    ensure_ensemble();
    return *ensemble_;
  }

  Json dispatch(const Analysis& a, const std::string& csv) {
    const auto& keys = a.params;
    if (a.type == "symbol") return symbol(keys, a.path, csv);
    if (a.type == "sector") return sector(keys, a.path, csv);
    if (a.type == "kappa") return kappa(keys, a.path, csv);
    if (a.type == "norming") return norming(keys, a.path, csv);
    if (a.type == "upper_function_test" || a.type == "lower_tail_test" || a.type == "symbol_liminf_test") {
      return classify(a.type, keys, a.path, csv);
    }
    if (a.type == "simulate") return simulate(keys, a.path, csv);
    if (a.type == "sup_probability") return sup_probability(keys, a.path, csv);
    if (a.type == "maximal_inequality") return maximal(keys, a.path, csv);
    if (a.type == "decay") return decay(keys, a.path, csv);
    if (a.type == "spitzer") return spitzer(keys, a.path, csv);
    if (a.type == "etemadi") return etemadi(keys, a.path, csv);
    if (a.type == "charfn") return charfn(keys, a.path, csv);
    return chung(keys, a.path, csv);
  }

  // Objects below re-read the already key-checked parameters.
  static JsonObject params(const Json& j, const std::string& path) { return JsonObject(j, path, all_keys()); }

  static std::initializer_list<std::string_view> all_keys() {
    static const std::initializer_list<std::string_view> keys = {
        "type", "xi", "method", "x_window", "R", "function", "args", "epsilon", "n", "t_max", "levels",
        "norming", "C", "v_exponent", "v_log_power", "g_exponent", "w_exponent", "w_log_power",
        "w_loglog_power", "write_paths", "t", "refine", "m_max", "windows", "rate_alpha_shift"};
    return keys;
  }

  Json symbol(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const auto xi = p.numbers_or("xi", log_grid(0.1, 100.0, 40));
    const std::string method = p.string_or("method", "automatic");
    if (method != "automatic" && method != "quadrature") p.fail("method", "expected automatic or quadrature");
    const PUMethod m = method == "automatic" ? PUMethod::automatic : PUMethod::quadrature;
    Csv csv(s_, {"x", "xi", "pU", "re_p", "im_p"});
    for (double x : s_.anchors) {
      for (double v : xi) {
        const auto e = eval_exponent(s_.process.triplet, x, v);
        csv.row({x, v, eval_pU(measure(), x, v, m), e.re, e.im});
      }
    }
    write_csv(name, csv);
    return {{"rows", xi.size() * s_.anchors.size()}};
  }

  Json sector(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const Interval w = window_param(p, x0());
    const auto est = sector_estimate(s_.process.triplet, w, p.numbers_or("xi", log_grid(0.1, 100.0, 16)));
    Csv csv(s_, {"refinement", "sup_ratio"});
    for (std::size_t k = 0; k < est.refinement_sups.size(); ++k) {
      csv.row({static_cast<double>(k), est.refinement_sups[k]});
    }
    write_csv(name, csv);
    return {{"sector", est.value}, {"unbounded_on_grid", est.unbounded_on_grid}};
  }

  Json kappa(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    std::vector<double> R = p.numbers_or("R", {});
    if (R.empty()) {
      for (int k = 3; k <= 12; ++k) R.push_back(std::ldexp(1.0, -k));
    }
    Csv csv(s_, {"x", "R", "kappa"});
    Json out = Json::array();
    for (double x : s_.anchors) {
      const auto k = kappa_estimate(measure(), x, R);
      for (std::size_t i = 0; i < R.size(); ++i) csv.row({x, R[i], k.kappa_values[i]});
      out.push_back(to_json(k));
    }
    write_csv(name, csv);
    return {{"estimates", out}};
  }

  Json norming(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const std::string fn = p.string("function");
    const auto args = p.numbers("args");
    Csv csv(s_, {"x", "argument", "value"});
    for (double x : s_.anchors) {
      std::optional<NormingFunction> f;
      if (fn == "u") {
        f = make_u(measure(), x);
      } else if (fn == "u_inverse") {
        f = make_u_inverse(measure(), x);
      } else if (fn == "chung_rate") {
        f = make_chung_rate(measure(), x);
      } else if (fn == "upper_v") {
        f = make_upper_v(measure(), x, p.number_or("epsilon", 0.5), static_cast<int>(p.unsigned_or("n", 1)));
      } else {
        p.fail("function", "expected u, u_inverse, chung_rate or upper_v");
      }
      for (double a : args) csv.row({x, a, (*f)(a)});
    }
    write_csv(name, csv);
    return {{"function", fn}, {"rows", args.size() * s_.anchors.size()}};
  }

  Json classify(const std::string& type, const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const double t_max = p.number_or("t_max", 0.1);
    const int levels = static_cast<int>(p.unsigned_or("levels", 20));
    Json verdicts = Json::array();
    Csv csv(s_, {"x", "k", "t", "block"});
    auto add = [&](double x, const TestVerdict& v) {
      for (std::size_t k = 0; k < v.block_values.size(); ++k) {
        csv.row({x, static_cast<double>(k), v.block_times[k], v.block_values[k]});
      }
      Json r = to_json(v);
      r["x"] = x;
      verdicts.push_back(r);
    };
    if (type == "upper_function_test") {
      const std::string nm = p.string_or("norming", "iterated_log");
      if (nm != "iterated_log" && nm != "plain") p.fail("norming", "expected iterated_log or plain");
      for (double x : s_.anchors) {
        add(x, upper_function_test(measure(), x, p.number_or("epsilon", 0.5), static_cast<int>(p.unsigned_or("n", 1)),
                                   t_max, levels, nm == "plain" ? UpperNorming::plain : UpperNorming::iterated_log));
      }
    } else if (type == "lower_tail_test") {
      const double e = p.number("v_exponent");
      const double l = p.number_or("v_log_power", 0.0);
      auto v = [=](double t) { return std::pow(t, e) * std::pow(std::abs(std::log(t)), l); };
      add(x0(), lower_tail_test(measure(), v, p.number_or("C", 1.0), t_max, levels));
    } else {
      const double ge = p.number("g_exponent");
      const double we = p.number("w_exponent");
      const double wl = p.number_or("w_log_power", 0.0);
      const double wll = p.number_or("w_loglog_power", 0.0);
      auto g = [=](double xi) { return std::pow(xi, ge); };
      auto w = [=](double t) {
        const double lt = std::abs(std::log(t));
        return std::pow(t, we) * std::pow(lt, wl) * std::pow(std::log(lt), wll);
      };
      add(x0(), symbol_liminf_test(g, w, t_max, levels));
    }
    write_csv(name, csv);
    return {{"verdicts", verdicts}};
  }

  Json simulate(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const PathEnsemble& e = ens();
    Csv csv(s_, {"t", "mean_position", "sup_q1", "sup_median", "sup_q3"});
    std::vector<double> col(e.size());
    for (std::size_t r = 0; r < e.records(); ++r) {
      for (std::size_t i = 0; i < e.size(); ++i) col[i] = e.position(i, r);
      const double mean = compensated_sum(col) / static_cast<double>(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) col[i] = e.sup(i, r);
      const Quartiles q = quartiles(col);
      csv.row({e.record_times()[r], mean, q.q1, q.median, q.q3});
    }
    write_csv(name, csv);
    Json out = {{"paths", e.size()}, {"records", e.records()}, {"spec_hash", ensemble_spec_hash(e)}};
    if (p.boolean_or("write_paths", true)) {
      std::ostringstream os;
      write_ensemble_jsonl(e, os);
      write_file_atomic(std::filesystem::path(s_.output_dir) / "ensemble.jsonl", os.str());
      out["ensemble_file"] = "ensemble.jsonl";
    }
    return out;
  }

  Json sup_probability(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    Csv csv(s_, {"t", "R", "p_at_least", "standard_error"});
    for (double t : p.numbers("t")) {
      for (double R : p.numbers("R")) {
        const auto e = estimate_sup_probability(ens(), t, R, SupDirection::at_least);
        csv.row({t, R, e.p_hat, e.standard_error});
      }
    }
    write_csv(name, csv);
    return Json::object();
  }

  Json maximal(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    std::optional<PathEnsemble> fine;
    if (p.boolean_or("refine", false)) {
      const PathGrid& g = *s_.grid;
      PathGrid finer = g.layout() == PathGrid::Layout::uniform
                           ? PathGrid::uniform(g.t_max(), 2 * g.steps())
                           : PathGrid::geometric(g.t_max(), g.levels(), 2 * g.points_per_level());
      fine = simulate_ensemble({s_.process, x0(), finer, s_.seed, s_.paths, {}});
    }
    const auto r = maximal_inequality_check(ens(), measure(), x0(), p.numbers("t"), p.numbers("R"),
                                            fine ? &*fine : nullptr);
    Csv csv(s_, {"t", "R", "p_exceed", "p_stay", "upper_ratio", "lower_product"});
    for (const auto& row : r.rows) {
      csv.row({row.t, row.R, row.exceed.p_hat, row.stay.p_hat, row.upper_ratio, row.lower_product});
    }
    write_csv(name, csv);
    Json out = to_json(r);
    out.erase("rows");
    return out;
  }

  Json decay(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const auto r = multi_interval_decay(ens(), measure(), x0(), p.number_or("R", 1.0),
                                       static_cast<int>(p.unsigned_or("m_max", 8)));
    Csv csv(s_, {"m", "t", "q", "standard_error"});
    for (std::size_t k = 0; k < r.q.size(); ++k) {
      csv.row({static_cast<double>(k + 1), r.times[k], r.q[k].p_hat, r.q[k].standard_error});
    }
    write_csv(name, csv);
    return to_json(r);
  }

  Json spitzer(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const auto t = p.numbers("t");
    const auto est = spitzer_estimate(ens(), x0(), t);
    Csv csv(s_, {"t", "p_below", "standard_error"});
    bool within = true;
    for (std::size_t k = 0; k < t.size(); ++k) {
      csv.row({t[k], est[k].p_hat, est[k].standard_error});
      within = within && std::abs(est[k].p_hat - 0.5) <= 3.0 * est[k].standard_error;
    }
    write_csv(name, csv);
    Json out = {{"within_3se_of_half", within}};
    const bool symmetric = measure().is_symmetric() && s_.process.triplet.drift().is_constant() &&
                           s_.process.triplet.drift()(0.0) == 0.0;
    if (symmetric) out["pass"] = within;
    return out;
  }

  Json etemadi(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const double e = p.number("v_exponent");
    const auto r = etemadi_check(ens(), [=](double t) { return std::pow(t, e); }, p.number_or("C", 1.0),
                                 p.numbers("t"));
    Csv csv(s_, {"t", "v", "p_endpoint", "p_maximum", "poisson_bound"});
    for (const auto& row : r.rows) {
      csv.row({row.t, row.v, row.endpoint.p_hat, row.maximum.p_hat, row.poisson_bound});
    }
    write_csv(name, csv);
    return to_json(r);
  }

  Json charfn(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const Interval w = window_param(p, x0());
    const auto family = build_symbol_family(s_.process.triplet, w, log_grid(0.1, 100.0, 16));
    std::optional<double> eps;
    if (p.has("epsilon")) eps = p.number("epsilon");
    const auto r = empirical_charfn_bound(ens(), family, p.numbers("xi"), p.numbers("t"), eps);
    Csv csv(s_, {"t", "xi", "re", "im", "modulus", "bound"});
    for (const auto& row : r.rows) csv.row({row.t, row.xi, row.lambda.re, row.lambda.im, row.modulus, row.bound});
    write_csv(name, csv);
    Json out = to_json(r);
    out.erase("rows");
    return out;
  }

  Json chung(const Json& j, const std::string& path, const std::string& name) {
    const JsonObject p = params(j, path);
    const Json& windows = p.at("windows");
    if (!windows.is_array() || windows.empty()) p.fail("windows", "expected a list of [t_lo, t_hi]");
    std::optional<LevyMeasureSpec> shifted;
    if (p.has("rate_alpha_shift")) {
      const auto* pl = std::get_if<PowerLawMeasure>(&measure().shape);
      if (pl == nullptr || !pl->alpha.is_constant()) {
        p.fail("rate_alpha_shift", "needs a constant-index power-law measure");
      }
      shifted = power_law(Profile::constant(pl->alpha_at(0.0) + p.number("rate_alpha_shift")));
    }
    Csv csv(s_, {"t_lo", "t_hi", "q1", "median", "q3"});
    Json out = Json::array();
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const Json& w = windows[i];
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
        p.fail("windows", "entry " + std::to_string(i) + " must be [t_lo, t_hi]");
      }
      const double lo = w[0].get<double>();
      const double hi = w[1].get<double>();
      const double x = x0();
      const ChungStatistic st =
          shifted ? chung_statistic(ens(), [&](double t) { return chung_rate(*shifted, x, t); }, lo, hi)
                  : chung_statistic(ens(), measure(), x, lo, hi);
      csv.row({lo, hi, st.summary.q1, st.summary.median, st.summary.q3});
      out.push_back(to_json(st));
    }
    write_csv(name, csv);
    return {{"windows", out}};
  }

  const Scenario& s_;
  const RunOptions& opt_;
  std::ostream& log_;
  std::optional<PathEnsemble> ensemble_;
};

}  // namespace

Json run_scenario(const Scenario& scenario, const RunOptions& options, std::ostream& log) {
  return Runner(scenario, options, log).run();
}

}  // namespace lil
