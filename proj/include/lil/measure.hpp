#pragma once

#include <variant>
#include <vector>

#include "lil/profile.hpp"

namespace lil {

/// Intensity of a power-law jump density c(x) |y|^{-1-alpha(x)}.
///   normalized   c = alpha (2 - alpha) / 4, which makes p^U(x, xi) = |xi|^alpha
///   unit_stable  c chosen so that the exponent is exactly |xi|^alpha
///   profile      explicit c(x)
struct PowerLawScale {
  enum class Kind { normalized, unit_stable, profile };
  Kind kind = Kind::normalized;
  Profile profile{};

  double operator()(double alpha, double x) const;
};

struct PowerLawMeasure {
  Profile alpha;
  PowerLawScale scale{};

  double alpha_at(double x) const { return alpha(x); }
  double c_at(double x) const { return scale(alpha(x), x); }
};

struct Atom {
  double location;
  double mass;
};

struct AtomicMeasure {
  std::vector<Atom> atoms;
};

/// Density tabulated at n log-spaced nodes on [y_min, y_max]; zero outside.
/// Between nodes log f is linear in log |y| when both neighbours are positive,
/// f is linear otherwise.
struct TabulatedMeasure {
  double y_min = 1e-3;
  double y_max = 1.0;
  std::vector<double> density_pos;
  std::vector<double> density_neg;  // ignored when symmetric
  bool symmetric = true;

  double node(std::size_t j) const;
  double density(double y) const;  // signed y
};

/// Tagged union of the supported Levy measures nu(x, dy).
struct LevyMeasureSpec {
  std::variant<PowerLawMeasure, AtomicMeasure, TabulatedMeasure> shape;
  double truncation_radius = 1.0;

  bool is_power_law() const { return std::holds_alternative<PowerLawMeasure>(shape); }
  bool is_symmetric() const;
  /// True when nu(x, .) does not depend on x.
  bool state_independent() const;
  /// Throws Error(invalid_spec) when an invariant is broken.
  void validate() const;
  /// Numerical value of the integral of min(1, y^2) nu(x, dy).
  double levy_integral(double x) const;
};

LevyMeasureSpec power_law(Profile alpha, PowerLawScale scale = {}, double truncation_radius = 1.0);
LevyMeasureSpec atomic(std::vector<Atom> atoms);
LevyMeasureSpec tabulated(TabulatedMeasure table, double truncation_radius = 1.0);

/// Constant-index symmetric stable measure with exponent exactly |xi|^alpha.
LevyMeasureSpec unit_stable(double alpha);

/// Drift l(x), no Gaussian part, jump measure nu(x, dy).
class LevyTriplet {
 public:
  LevyTriplet(Profile drift, LevyMeasureSpec measure, double gaussian_variance = 0.0);

  const Profile& drift() const { return drift_; }
  const LevyMeasureSpec& measure() const { return measure_; }
  double gaussian_variance() const { return 0.0; }
  bool state_independent() const { return drift_.is_constant() && measure_.state_independent(); }

 private:
  Profile drift_;
  LevyMeasureSpec measure_;
};

/// Integral of (1 - cos u) u^{-1-alpha} over (0, inf). For a symmetric density
/// c |y|^{-1-alpha} the exponent is 2 c K(alpha) |xi|^alpha.
double stable_exponent_constant(double alpha);

}  // namespace lil
