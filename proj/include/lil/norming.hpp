#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lil/measure.hpp"
#include "lil/symbol.hpp"

namespace lil {

enum class BallMode { inf, sup };

/// Extremum of y -> p^U(y, xi) over |x - y| <= radius: a 257-point scan plus
/// golden-section refinement (tolerance 1e-12 in y) around the best grid point.
double ball_extremum_pU(const LevyMeasureSpec& measure, double x, double xi, double radius,
                        BallMode mode);

/// Extremum of y -> p^U(y, 1/R) over |x - y| <= radius_multiple * R,
/// radius_multiple in {2, 3, 6}.
double pU_ball_extremum(const LevyMeasureSpec& measure, double x, double R, int radius_multiple,
                        BallMode mode);

/// u(x, R) = 1 / inf_{|x-y| <= 3R} p^U(y, 1/R), R in (0, 1].
double u_of_R(const LevyMeasureSpec& measure, double x, double R);

/// Generalized inverse inf{r : u(x, r) >= rho}. Scans r upward from 1e-12 by
/// doubling, then bisects the first bracket to relative width 1e-10.
double u_inverse(const LevyMeasureSpec& measure, double x, double rho);

/// u^{-1}(x, t / log|log t|), t in (0, 1/e).
double chung_rate(const LevyMeasureSpec& measure, double x, double t);

/// |log t| * |log|log t|| * ... with the n-th factor raised to 1 + epsilon.
/// For n = 1 this is |log t|^{1+epsilon}.
double iterated_log_factor(double t, double epsilon, int n);

enum class VMethod { automatic, numeric };

/// chi(x, s): the inverse of xi -> p^U(x, xi) restricted to xi >= 1.
double pU_inverse(const LevyMeasureSpec& measure, double x, double s,
                  VMethod method = VMethod::automatic);

/// v(x, t) = 1 / chi(x, 1 / (t l_{eps,n}(t))).
double upper_norming_v(const LevyMeasureSpec& measure, double x, double t, double epsilon, int n,
                       VMethod method = VMethod::automatic);

/// v(x, t) = 1 / chi(x, 1 / t), i.e. the iterated-log factor replaced by 1.
double plain_norming_v(const LevyMeasureSpec& measure, double x, double t,
                       VMethod method = VMethod::automatic);

struct KappaEstimate {
  double x = 0.0;
  std::vector<double> R_grid;
  std::vector<double> kappa_values;
  double kappa = 1.0;
};

/// Per R: sup_{|x-y| <= 2R} p^U(y, 1/R) / inf_{|x-y| <= 3R} p^U(y, 1/R).
KappaEstimate kappa_estimate(const LevyMeasureSpec& measure, double x,
                             const std::vector<double>& R_grid);

/// A scalar function of one argument at a fixed anchor x, with its valid domain.
class NormingFunction {
 public:
  enum class Kind { u, u_inverse, chung_rate, upper_v, symbol_w };
  enum class Form { closed_form, numeric, tabulated };

  NormingFunction(Kind kind, double x, Form form, Interval domain,
                  std::function<double(double)> evaluator);

  double operator()(double arg) const;

  Kind kind() const { return kind_; }
  Form form() const { return form_; }
  double anchor() const { return x_; }
  Interval domain() const { return domain_; }
  std::string name() const;

  /// Numeric form sampled on `grid` (ascending, positive) with log-log
  /// interpolation between samples.
  NormingFunction tabulate(const std::vector<double>& grid) const;

  /// CSV with columns argument,value.
  void write_csv(std::ostream& os, const std::vector<double>& args) const;

 private:
  Kind kind_;
  double x_;
  Form form_;
  Interval domain_;
  std::function<double(double)> eval_;
};

NormingFunction make_u(const LevyMeasureSpec& measure, double x);
NormingFunction make_u_inverse(const LevyMeasureSpec& measure, double x);
NormingFunction make_chung_rate(const LevyMeasureSpec& measure, double x);
NormingFunction make_upper_v(const LevyMeasureSpec& measure, double x, double epsilon, int n);

}  // namespace lil
