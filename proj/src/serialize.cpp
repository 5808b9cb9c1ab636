#include "lil/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "lil/error.hpp"

namespace lil {

JsonObject::JsonObject(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
    : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw Error(Errc::schema, path_ + ": expected an object");
  for (const auto& [key, value] : j_.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw Error(Errc::schema, path_ + "." + key + ": unknown key \"" + key + "\"");
  }
}

bool JsonObject::has(std::string_view key) const { return j_.contains(std::string(key)); }

const Json& JsonObject::at(std::string_view key) const {
  const auto it = j_.find(std::string(key));
  if (it == j_.end()) fail(key, "missing required key");
  return *it;
}

void JsonObject::fail(std::string_view key, const std::string& message) const {
  throw Error(Errc::schema, path_of(key) + ": " + message);
}

double JsonObject::number(std::string_view key) const {
  const Json& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

double JsonObject::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::uint64_t JsonObject::unsigned_integer(std::string_view key) const {
  const Json& v = at(key);
  if (!v.is_number_unsigned()) fail(key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t JsonObject::unsigned_or(std::string_view key, std::uint64_t fallback) const {
  return has(key) ? unsigned_integer(key) : fallback;
}

std::string JsonObject::string(std::string_view key) const {
  const Json& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string JsonObject::string_or(std::string_view key, std::string fallback) const {
  return has(key) ? string(key) : fallback;
}

bool JsonObject::boolean_or(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_boolean()) fail(key, "expected a boolean");
  return v.get<bool>();
}

std::vector<double> JsonObject::numbers(std::string_view key) const {
  const Json& v = at(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> JsonObject::numbers_or(std::string_view key, std::vector<double> fallback) const {
  return has(key) ? numbers(key) : fallback;
}

// ---------------------------------------------------------------------------
// Profiles and measures

Json to_json(const Profile& p) {
  switch (p.kind()) {
    case Profile::Kind::constant: return {{"kind", "constant"}, {"value", p.p0()}};
    case Profile::Kind::affine_clamped:
      return {{"kind", "affine_clamped"}, {"intercept", p.p0()}, {"slope", p.p1()}, {"lo", p.p2()}, {"hi", p.p3()}};
    case Profile::Kind::sinusoidal:
      return {{"kind", "sinusoidal"}, {"mean", p.p0()}, {"amplitude", p.p1()}, {"frequency", p.p2()}, {"phase", p.p3()}};
    case Profile::Kind::tanh_ramp:
      return {{"kind", "tanh_ramp"}, {"mean", p.p0()}, {"amplitude", p.p1()}, {"scale", p.p2()}};
  }
  return {};
}

Profile profile_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return Profile::constant(j.get<double>());
  if (!j.is_object()) throw Error(Errc::schema, path + ": expected a number or a profile object");
  const auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) throw Error(Errc::schema, path + ".kind: missing profile kind");
  const std::string kind = kind_it->get<std::string>();
  try {
    if (kind == "constant") {
      JsonObject o(j, path, {"kind", "value"});
      return Profile::constant(o.number("value"));
    }
    if (kind == "affine_clamped") {
      JsonObject o(j, path, {"kind", "intercept", "slope", "lo", "hi"});
      return Profile::affine_clamped(o.number("intercept"), o.number("slope"), o.number("lo"), o.number("hi"));
    }
    if (kind == "sinusoidal") {
      JsonObject o(j, path, {"kind", "mean", "amplitude", "frequency", "phase"});
      return Profile::sinusoidal(o.number("mean"), o.number("amplitude"), o.number_or("frequency", 1.0),
                                 o.number_or("phase", 0.0));
    }
    if (kind == "tanh_ramp") {
      JsonObject o(j, path, {"kind", "mean", "amplitude", "scale"});
      return Profile::tanh_ramp(o.number("mean"), o.number("amplitude"), o.number_or("scale", 1.0));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::schema) throw;
    throw Error(Errc::schema, path + ": " + e.what());
  }
  throw Error(Errc::schema, path + ".kind: unknown profile kind \"" + kind + "\"");
}

Json to_json(const LevyMeasureSpec& m) {
  Json j;
  if (const auto* pl = std::get_if<PowerLawMeasure>(&m.shape)) {
    j["type"] = "power_law";
    j["alpha"] = to_json(pl->alpha);
    switch (pl->scale.kind) {
      case PowerLawScale::Kind::normalized: j["c"] = "normalized"; break;
      case PowerLawScale::Kind::unit_stable: j["c"] = "unit_stable"; break;
      case PowerLawScale::Kind::profile: j["c"] = to_json(pl->scale.profile); break;
    }
    j["truncation_radius"] = m.truncation_radius;
  } else if (const auto* at = std::get_if<AtomicMeasure>(&m.shape)) {
    j["type"] = "atomic";
    j["atoms"] = Json::array();
    for (const auto& a : at->atoms) j["atoms"].push_back({{"location", a.location}, {"mass", a.mass}});
  } else {
    const auto& t = std::get<TabulatedMeasure>(m.shape);
    j["type"] = "tabulated";
    j["y_min"] = t.y_min;
    j["y_max"] = t.y_max;
    j["density_pos"] = t.density_pos;
    if (!t.symmetric) j["density_neg"] = t.density_neg;
    j["symmetric"] = t.symmetric;
    j["truncation_radius"] = m.truncation_radius;
  }
  return j;
}

LevyMeasureSpec measure_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw Error(Errc::schema, path + ": expected an object");
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) throw Error(Errc::schema, path + ".type: missing measure type");
  const std::string type = type_it->get<std::string>();
  LevyMeasureSpec m;
  if (type == "power_law") {
    JsonObject o(j, path, {"type", "alpha", "c", "truncation_radius"});
    PowerLawScale scale;
    if (o.has("c")) {
      const Json& c = o.at("c");
      if (c.is_string()) {
        const auto s = c.get<std::string>();
        if (s == "normalized") {
          scale.kind = PowerLawScale::Kind::normalized;
        } else if (s == "unit_stable") {
          scale.kind = PowerLawScale::Kind::unit_stable;
        } else {
          o.fail("c", "expected \"normalized\", \"unit_stable\" or a profile");
        }
      } else {
        scale.kind = PowerLawScale::Kind::profile;
        scale.profile = profile_from_json(c, o.path_of("c"));
      }
    }
    m = LevyMeasureSpec{PowerLawMeasure{profile_from_json(o.at("alpha"), o.path_of("alpha")), scale},
                        o.number_or("truncation_radius", 1.0)};
  } else if (type == "atomic") {
    JsonObject o(j, path, {"type", "atoms"});
    const Json& atoms = o.at("atoms");
    if (!atoms.is_array()) o.fail("atoms", "expected an array");
    AtomicMeasure am;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      JsonObject a(atoms[i], o.path_of("atoms") + "[" + std::to_string(i) + "]", {"location", "mass"});
      am.atoms.push_back({a.number("location"), a.number("mass")});
    }
    m = LevyMeasureSpec{am, 1.0};
  } else if (type == "tabulated") {
    JsonObject o(j, path, {"type", "y_min", "y_max", "density_pos", "density_neg", "symmetric", "truncation_radius"});
    TabulatedMeasure t;
    t.y_min = o.number("y_min");
    t.y_max = o.number("y_max");
    t.density_pos = o.numbers("density_pos");
    t.symmetric = o.boolean_or("symmetric", !o.has("density_neg"));
    t.density_neg = o.numbers_or("density_neg", {});
    m = LevyMeasureSpec{t, o.number_or("truncation_radius", 1.0)};
  } else {
    throw Error(Errc::schema, path + ".type: unknown measure type \"" + type + "\"");
  }
  try {
    m.validate();
  } catch (const Error& e) {
    throw Error(Errc::schema, path + ": " + e.what());
  }
  return m;
}

Json to_json(const ProcessSpec& p) {
  return {{"kind", p.kind == ProcessSpec::Kind::levy ? "levy" : "stable_like"},
          {"drift", to_json(p.triplet.drift())},
          {"measure", to_json(p.triplet.measure())}};
}

ProcessSpec process_from_json(const Json& j, const std::string& path) {
  JsonObject o(j, path, {"kind", "drift", "measure"});
  const std::string kind = o.string_or("kind", "levy");
  Profile drift = o.has("drift") ? profile_from_json(o.at("drift"), o.path_of("drift")) : Profile::constant(0.0);
  LevyMeasureSpec measure = measure_from_json(o.at("measure"), o.path_of("measure"));
  ProcessSpec spec{ProcessSpec::Kind::levy, LevyTriplet(drift, measure)};
  if (kind == "stable_like") {
    spec.kind = ProcessSpec::Kind::stable_like;
  } else if (kind != "levy") {
    o.fail("kind", "expected \"levy\" or \"stable_like\"");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(Errc::schema, path + ": " + e.what());
  }
  return spec;
}

Json to_json(const PathGrid& g) {
  if (g.layout() == PathGrid::Layout::uniform) {
    return {{"layout", "uniform"}, {"t_max", g.t_max()}, {"steps", g.steps()}};
  }
  return {{"layout", "geometric"},
          {"t_max", g.t_max()},
          {"levels", g.levels()},
          {"points_per_level", g.points_per_level()}};
}

PathGrid grid_from_json(const Json& j, const std::string& path) {
  JsonObject o(j, path, {"layout", "t_max", "steps", "levels", "points_per_level"});
  const std::string layout = o.string_or("layout", "uniform");
  try {
    if (layout == "uniform") return PathGrid::uniform(o.number("t_max"), o.unsigned_integer("steps"));
    if (layout == "geometric") {
      return PathGrid::geometric(o.number("t_max"), o.unsigned_integer("levels"),
                                 o.unsigned_or("points_per_level", 1));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::schema) throw;
    throw Error(Errc::schema, path + ": " + e.what());
  }
  o.fail("layout", "expected \"uniform\" or \"geometric\"");
}

// ---------------------------------------------------------------------------
// Results

namespace {

// JSON has no infinities; they are written as strings.
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json to_json(const Quartiles& q) { return {{"q1", num(q.q1)}, {"median", num(q.median)}, {"q3", num(q.q3)}}; }

}  // namespace

Json to_json(const TestVerdict& v) {
  Json j = {{"verdict", to_string(v.verdict)},
            {"block_times", nums(v.block_times)},
            {"blocks", nums(v.block_values)},
            {"fitted_exponent", num(v.fitted_exponent)},
            {"fitted_ratio", num(v.fitted_ratio)},
            {"fitted_log_power", num(v.fitted_log_power)},
            {"note", v.confidence_note}};
  if (v.c) j["c"] = num(*v.c);
  return j;
}

Json to_json(const ProbabilityEstimate& e) {
  return {{"p_hat", num(e.p_hat)}, {"standard_error", num(e.standard_error)}, {"sample_size", e.sample_size}};
}

Json to_json(const MaximalInequalityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"R", row.R},
                    {"exceed", to_json(row.exceed)},
                    {"stay", to_json(row.stay)},
                    {"sup_ball_pU", num(row.sup_ball_pU)},
                    {"inf_ball_pU", num(row.inf_ball_pU)},
                    {"upper_ratio", num(row.upper_ratio)},
                    {"lower_product", num(row.lower_product)}});
  }
  Json j = {{"check", "maximal_inequality"}, {"pass", r.pass},      {"c1_hat", num(r.c1_hat)},
            {"c2_hat", num(r.c2_hat)},       {"rows", rows},        {"note", r.note}};
  if (r.c1_refined) j["c1_refined"] = num(*r.c1_refined);
  if (r.c2_refined) j["c2_refined"] = num(*r.c2_refined);
  return j;
}

Json to_json(const DecayReport& r) {
  Json q = Json::array();
  for (const auto& e : r.q) q.push_back(to_json(e));
  return {{"check", "multi_interval_decay"},
          {"pass", r.pass},
          {"R", r.R},
          {"u", r.u},
          {"times", r.times},
          {"q", q},
          {"fitted_points", r.fitted_points},
          {"slope", num(r.slope)},
          {"intercept", num(r.intercept)},
          {"r_squared", num(r.r_squared)},
          {"truncated", r.truncated},
          {"monotone", r.monotone}};
}

Json to_json(const EtemadiReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"v", row.v},
                    {"endpoint", to_json(row.endpoint)},
                    {"maximum", to_json(row.maximum)},
                    {"poisson_bound", row.poisson_bound},
                    {"etemadi_holds", row.etemadi_holds},
                    {"poisson_holds", row.poisson_holds}});
  }
  return {{"check", "etemadi"}, {"pass", r.pass}, {"C", r.C}, {"rows", rows}};
}

Json to_json(const CharfnReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"xi", row.xi},
                    {"re", row.lambda.re},
                    {"im", row.lambda.im},
                    {"modulus", row.modulus},
                    {"inf_re_p", num(row.inf_re_p)},
                    {"bound", row.bound},
                    {"violation", row.violation},
                    {"in_scope", row.in_scope}});
  }
  return {{"check", "charfn_bound"},
          {"pass", r.pass},
          {"sector", r.sector},
          {"epsilon", r.epsilon},
          {"delta", r.delta},
          {"band", r.band},
          {"violations_in_scope", r.violations_in_scope},
          {"points_in_scope", r.points_in_scope},
          {"flagged_outside_scope", r.flagged_outside_scope},
          {"deviations", r.deviations},
          {"rows", rows}};
}

Json to_json(const ChungStatistic& s) {
  Json j = {{"t_lo", s.t_lo}, {"t_hi", s.t_hi}, {"probe_times", s.probe_times}, {"summary", to_json(s.summary)}};
  if (!s.exit_radii.empty()) {
    j["exit_radii"] = s.exit_radii;
    j["exit_summary"] = to_json(s.exit_summary);
  }
  return j;
}

Json to_json(const KappaEstimate& k) {
  return {{"x", k.x}, {"R", k.R_grid}, {"kappa_values", nums(k.kappa_values)}, {"kappa", num(k.kappa)}};
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string ensemble_spec_hash(const PathEnsemble& ens) {
  const Json j = {{"process", to_json(ens.process())},
                  {"grid", to_json(ens.grid())},
                  {"x0", ens.x0()},
                  {"record_index", ens.record_index()}};
  return hex64(fnv1a64(canonical_dump(j)));
}

void write_ensemble_jsonl(const PathEnsemble& ens, std::ostream& os) {
  const Json header = {{"format", "lil-ensemble"},
                       {"version", 1},
                       {"spec_hash", ensemble_spec_hash(ens)},
                       {"seed", ens.master_seed()},
                       {"paths", ens.size()},
                       {"x0", ens.x0()},
                       {"process", to_json(ens.process())},
                       {"grid", to_json(ens.grid())},
                       {"record_index", ens.record_index()}};
  os << canonical_dump(header) << '\n';
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto p = ens.positions_of(i);
    const auto s = ens.sups_of(i);
    const Json line = {{"path", i},
                       {"positions", std::vector<double>(p.begin(), p.end())},
                       {"running_sup", std::vector<double>(s.begin(), s.end())}};
    os << canonical_dump(line) << '\n';
  }
}

PathEnsemble read_ensemble_jsonl(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::schema, "ensemble file is empty");
  Json header;
  try {
    header = Json::parse(line);
  } catch (const Json::exception& e) {
    throw Error(Errc::schema, std::string("ensemble header: ") + e.what());
  }
  JsonObject h(header, "$header", {"format", "version", "spec_hash", "seed", "paths", "x0", "process", "grid",
                                   "record_index"});
  if (h.string("format") != "lil-ensemble") h.fail("format", "not an ensemble file");
  std::vector<std::size_t> record;
  for (const auto& v : h.at("record_index")) record.push_back(v.get<std::size_t>());
  PathEnsemble ens(process_from_json(h.at("process"), h.path_of("process")),
                   h.number("x0"), grid_from_json(h.at("grid"), h.path_of("grid")), h.unsigned_integer("seed"),
                   record, h.unsigned_integer("paths"));
  if (ensemble_spec_hash(ens) != h.string("spec_hash")) h.fail("spec_hash", "does not match the header contents");
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (!std::getline(is, line)) throw Error(Errc::schema, "ensemble file truncated at path " + std::to_string(i));
    const Json j = Json::parse(line);
    const std::string path = "$path[" + std::to_string(i) + "]";
    JsonObject o(j, path, {"path", "positions", "running_sup"});
    if (o.unsigned_integer("path") != i) o.fail("path", "paths out of order");
    const auto p = o.numbers("positions");
    const auto s = o.numbers("running_sup");
    if (p.size() != ens.records() || s.size() != ens.records()) o.fail("positions", "record count mismatch");
    std::copy(p.begin(), p.end(), ens.positions_of(i).begin());
    std::copy(s.begin(), s.end(), ens.sups_of(i).begin());
  }
  return ens;
}

}  // namespace lil
