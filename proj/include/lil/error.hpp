#pragma once

#include <stdexcept>
#include <string>

namespace lil {

enum class Errc {
  quadrature_failure,
  sector_violated,
  degenerate_measure,
  rho_out_of_range,
  domain_error,
  iterated_log_undefined,
  inverse_undefined,
  levy_only,
  sector_too_large,
  empty_ensemble,
  window_outside_grid,
  precondition,
  invalid_spec,
  schema,
};

const char* to_string(Errc code);

/// Library-wide exception. Every failure named by an operation contract maps
/// to one `Errc` so callers (and the CLI exit-code logic) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::quadrature_failure: return "quadrature failure";
    case Errc::sector_violated: return "sector violated";
    case Errc::degenerate_measure: return "degenerate measure";
    case Errc::rho_out_of_range: return "rho out of range";
    case Errc::domain_error: return "domain error";
    case Errc::iterated_log_undefined: return "iterated log undefined";
    case Errc::inverse_undefined: return "inverse undefined";
    case Errc::levy_only: return "Levy-only test";
    case Errc::sector_too_large: return "sector too large";
    case Errc::empty_ensemble: return "empty ensemble";
    case Errc::window_outside_grid: return "window outside grid";
    case Errc::precondition: return "precondition violated";
    case Errc::invalid_spec: return "invalid spec";
    case Errc::schema: return "schema violation";
  }
  return "unknown error";
}

}  // namespace lil
