#pragma once

#include <string_view>

namespace lil {

/// Named builtin scalar function of the state x. Used for the stable index
/// alpha(x), the jump intensity c(x) and the drift l(x). There is no general
/// expression parser; every profile is one of the four kinds below.
class Profile {
 public:
  enum class Kind { constant, affine_clamped, sinusoidal, tanh_ramp };

  Profile() = default;

  static Profile constant(double value);
  /// clamp(intercept + slope * x, lo, hi)
  static Profile affine_clamped(double intercept, double slope, double lo, double hi);
  /// mean + amplitude * sin(frequency * x + phase)
  static Profile sinusoidal(double mean, double amplitude, double frequency = 1.0,
                            double phase = 0.0);
  /// mean + amplitude * tanh(x / scale)
  static Profile tanh_ramp(double mean, double amplitude, double scale = 1.0);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Closed range of values over the whole real line.
  double lower_bound() const;
  double upper_bound() const;

  double max_abs_derivative(double lo, double hi) const;

  bool is_constant() const;
  Kind kind() const { return kind_; }
  std::string_view kind_name() const;

  // Raw parameters; meaning depends on kind (see the factories).
  double p0() const { return p_[0]; }
  double p1() const { return p_[1]; }
  double p2() const { return p_[2]; }
  double p3() const { return p_[3]; }

 private:
  Profile(Kind kind, double a, double b, double c, double d) : kind_(kind), p_{a, b, c, d} {}

  Kind kind_ = Kind::constant;
  double p_[4] = {0.0, 0.0, 0.0, 0.0};
};

}  // namespace lil
