#include "lil/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lil/error.hpp"

namespace lil {

Profile Profile::constant(double value) { return {Kind::constant, value, 0.0, 0.0, 0.0}; }

Profile Profile::affine_clamped(double intercept, double slope, double lo, double hi) {
  if (!(lo <= hi)) throw Error(Errc::invalid_spec, "affine_clamped profile needs lo <= hi");
  return {Kind::affine_clamped, intercept, slope, lo, hi};
}

Profile Profile::sinusoidal(double mean, double amplitude, double frequency, double phase) {
  return {Kind::sinusoidal, mean, amplitude, frequency, phase};
}

Profile Profile::tanh_ramp(double mean, double amplitude, double scale) {
  if (!(scale > 0.0)) throw Error(Errc::invalid_spec, "tanh_ramp profile needs scale > 0");
  return {Kind::tanh_ramp, mean, amplitude, scale, 0.0};
}

double Profile::operator()(double x) const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine_clamped: return std::clamp(p_[0] + p_[1] * x, p_[2], p_[3]);
    case Kind::sinusoidal: return p_[0] + p_[1] * std::sin(p_[2] * x + p_[3]);
    case Kind::tanh_ramp: return p_[0] + p_[1] * std::tanh(x / p_[2]);
  }
  return 0.0;
}

double Profile::derivative(double x) const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::affine_clamped: {
      const double lin = p_[0] + p_[1] * x;
      return (lin > p_[2] && lin < p_[3]) ? p_[1] : 0.0;
    }
    case Kind::sinusoidal: return p_[1] * p_[2] * std::cos(p_[2] * x + p_[3]);
    case Kind::tanh_ramp: {
      const double s = 1.0 / std::cosh(x / p_[2]);
      return p_[1] / p_[2] * s * s;
    }
  }
  return 0.0;
}

double Profile::lower_bound() const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine_clamped: return p_[1] == 0.0 ? (*this)(0.0) : p_[2];
    case Kind::sinusoidal:
      return p_[2] == 0.0 ? (*this)(0.0) : p_[0] - std::abs(p_[1]);
    case Kind::tanh_ramp: return p_[0] - std::abs(p_[1]);
  }
  return 0.0;
}

double Profile::upper_bound() const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine_clamped: return p_[1] == 0.0 ? (*this)(0.0) : p_[3];
    case Kind::sinusoidal:
      return p_[2] == 0.0 ? (*this)(0.0) : p_[0] + std::abs(p_[1]);
    case Kind::tanh_ramp: return p_[0] + std::abs(p_[1]);
  }
  return 0.0;
}

double Profile::max_abs_derivative(double lo, double hi) const {
  if (lo > hi) std::swap(lo, hi);
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::affine_clamped: {
      if (p_[1] == 0.0) return 0.0;
      double a = (p_[2] - p_[0]) / p_[1];
      double b = (p_[3] - p_[0]) / p_[1];
      if (a > b) std::swap(a, b);
      return (b > lo && a < hi) ? std::abs(p_[1]) : 0.0;
    }
    case Kind::sinusoidal: {
      const double peak = std::abs(p_[1] * p_[2]);
      if (peak == 0.0) return 0.0;
      // |cos| peaks where frequency * x + phase is a multiple of pi.
      double u0 = p_[2] * lo + p_[3];
      double u1 = p_[2] * hi + p_[3];
      if (u0 > u1) std::swap(u0, u1);
      if (std::floor(u1 / std::numbers::pi) >= std::ceil(u0 / std::numbers::pi)) return peak;
      return std::max(std::abs(derivative(lo)), std::abs(derivative(hi)));
    }
    case Kind::tanh_ramp: return std::abs(derivative(std::clamp(0.0, lo, hi)));
  }
  return 0.0;
}

bool Profile::is_constant() const {
  switch (kind_) {
    case Kind::constant: return true;
    case Kind::affine_clamped: return p_[1] == 0.0 || p_[2] == p_[3];
    case Kind::sinusoidal: return p_[1] == 0.0 || p_[2] == 0.0;
    case Kind::tanh_ramp: return p_[1] == 0.0;
  }
  return false;
}

std::string_view Profile::kind_name() const {
  switch (kind_) {
    case Kind::constant: return "constant";
    case Kind::affine_clamped: return "affine_clamped";
    case Kind::sinusoidal: return "sinusoidal";
    case Kind::tanh_ramp: return "tanh_ramp";
  }
  return "unknown";
}

}  // namespace lil
