#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lil/measure.hpp"
#include "lil/symbol.hpp"

namespace lil {

struct TestVerdict {
  enum class Kind { convergent, divergent, inconclusive, zero, positive_finite, infinite };

  Kind verdict = Kind::inconclusive;
  std::optional<double> c;           // positive_finite only
  std::vector<double> block_times;   // t_max 2^{-k}
  std::vector<double> block_values;  // block integrals, or samples t_j g(1/w(t_j))
  double fitted_exponent = 0.0;      // integral: -log2 of the fitted block ratio
  double fitted_ratio = 0.0;         // integral: fitted I_{k+1} / I_k
  double fitted_log_power = 0.0;     // integral: p in I_k ~ |log2 t_k|^{-p}; liminf: trend slope
  std::string confidence_note;
};

const char* to_string(TestVerdict::Kind kind);

/// Thresholds of the numerical decision rules. Every verdict records the
/// blocks it was derived from, so the rule can be re-applied to them.
struct ClassifierConfig {
  double delta_r = 0.05;           // geometric regime: fitted ratio <= 1 - delta_r
  double delta_p = 0.25;           // convergent: log-power p >= 1 + delta_p
  double divergence_margin = 0.05; // divergent: p <= 1 + divergence_margin
  double delta_z = 1e-3;           // liminf zero: running minima below delta_z
  double spread = 0.10;            // liminf positive-finite: relative spread
  double trend = 0.10;             // liminf trend slope threshold
};

/// Re-applies the integral decision rule to given blocks (I_k on
/// [t_max 2^{-k-1}, t_max 2^{-k}], k = 0..K).
TestVerdict decide_integral(std::vector<double> blocks, double t_max,
                            const ClassifierConfig& config = {});

/// Re-applies the liminf decision rule to samples m_j = t_j g(1/w(t_j)),
/// t_j = t_max 2^{-j}.
TestVerdict decide_liminf(const std::vector<double>& samples, double t_max,
                          const ClassifierConfig& config = {});

/// Numerical verdict on whether int_{0+} f(t) dt converges. Blocks on dyadic
/// intervals are integrated by fixed-order Gauss-Legendre in log t; the fit
/// window is the last K/2 blocks.
TestVerdict classify_integral_at_zero(const std::function<double(double)>& integrand, double t_max,
                                      int levels, const ClassifierConfig& config = {});

enum class UpperNorming { iterated_log, plain };

/// Classifies t -> sup_{|y-x| <= v(x,t)} p^U(y, 1/v(x,t)) with v from
/// upper_norming_v (or plain_norming_v). Convergent certifies the hypothesis of
/// the upper-function criterion.
TestVerdict upper_function_test(const LevyMeasureSpec& measure, double x, double epsilon, int n,
                                double t_max, int levels,
                                UpperNorming norming = UpperNorming::iterated_log,
                                const ClassifierConfig& config = {});

/// Classifies t -> nu{|y| > 2 C v(t)} for a state-independent measure.
/// Divergent certifies the lower-function hypothesis.
TestVerdict lower_tail_test(const LevyMeasureSpec& measure, const std::function<double(double)>& v,
                            double C, double t_max, int levels,
                            const ClassifierConfig& config = {});

/// Liminf of t g(1/w(t)) along t_j = t_max 2^{-j}: zero, positive-finite(c) or infinite.
TestVerdict symbol_liminf_test(const std::function<double(double)>& g,
                               const std::function<double(double)>& w, double t_max, int levels,
                               const ClassifierConfig& config = {});

}  // namespace lil
