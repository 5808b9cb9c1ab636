#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lil/classifiers.hpp"
#include "lil/mc_verify.hpp"
#include "lil/norming.hpp"
#include "lil/simulate.hpp"

namespace lil {

using Json = nlohmann::json;

/// Strict view of a JSON object: unknown keys and type mismatches raise
/// Error(schema) naming the field path, e.g. "$.process.measure.alhpa".
class JsonObject {
 public:
  JsonObject(const Json& j, std::string path, std::initializer_list<std::string_view> allowed);

  bool has(std::string_view key) const;
  const Json& at(std::string_view key) const;
  std::string path_of(std::string_view key) const { return path_ + "." + std::string(key); }

  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  std::uint64_t unsigned_integer(std::string_view key) const;
  std::uint64_t unsigned_or(std::string_view key, std::uint64_t fallback) const;
  std::string string(std::string_view key) const;
  std::string string_or(std::string_view key, std::string fallback) const;
  bool boolean_or(std::string_view key, bool fallback) const;
  std::vector<double> numbers(std::string_view key) const;
  std::vector<double> numbers_or(std::string_view key, std::vector<double> fallback) const;

  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

 private:
  const Json& j_;
  std::string path_;
};

Json to_json(const Profile& p);
Profile profile_from_json(const Json& j, const std::string& path);

Json to_json(const LevyMeasureSpec& m);
LevyMeasureSpec measure_from_json(const Json& j, const std::string& path);

/// {"kind": "levy" | "stable_like", "drift": profile, "measure": {...}}
Json to_json(const ProcessSpec& p);
ProcessSpec process_from_json(const Json& j, const std::string& path);

Json to_json(const PathGrid& g);
PathGrid grid_from_json(const Json& j, const std::string& path);

Json to_json(const TestVerdict& v);
Json to_json(const ProbabilityEstimate& e);
Json to_json(const MaximalInequalityReport& r);
Json to_json(const DecayReport& r);
Json to_json(const EtemadiReport& r);
Json to_json(const CharfnReport& r);
Json to_json(const ChungStatistic& s);
Json to_json(const KappaEstimate& k);

/// Sorted keys, no whitespace; doubles round-trip exactly.
std::string canonical_dump(const Json& j);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// FNV-1a of the canonical JSON of process, grid, x0 and record columns.
std::string ensemble_spec_hash(const PathEnsemble& ens);

/// One header line (format, spec hash, seed, grid, process), then one line per path.
void write_ensemble_jsonl(const PathEnsemble& ens, std::ostream& os);
PathEnsemble read_ensemble_jsonl(std::istream& is);

}  // namespace lil
