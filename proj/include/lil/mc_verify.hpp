#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lil/kernels.hpp"
#include "lil/simulate.hpp"
#include "lil/symbol.hpp"

namespace lil {

struct ProbabilityEstimate {
  double p_hat = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / N)
  std::size_t sample_size = 0;
};

ProbabilityEstimate proportion(std::size_t hits, std::size_t n);

enum class SupDirection { at_least, below };

/// Fraction of paths with running_sup(t) >= R (or < R).
ProbabilityEstimate estimate_sup_probability(const PathEnsemble& ens, double t, double R, SupDirection direction);

struct MaximalInequalityRow {
  double t = 0.0;
  double R = 0.0;
  ProbabilityEstimate exceed;  // sup >= R
  ProbabilityEstimate stay;    // sup < R
  double sup_ball_pU = 0.0;    // sup over |y - x| <= R of p^U(y, 1/R)
  double inf_ball_pU = 0.0;
  double upper_ratio = 0.0;    // exceed / (t sup_ball_pU)
  double lower_product = 0.0;  // stay * t inf_ball_pU
};

struct MaximalInequalityReport {
  std::vector<MaximalInequalityRow> rows;
  double c1_hat = 0.0;
  double c2_hat = 0.0;
  std::optional<double> c1_refined;
  std::optional<double> c2_refined;
  bool pass = false;
  std::string note;
};

/// Fitted constants of the two-sided maximal inequality. With a refined ensemble
/// (same spec, finer grid) the constants must not move by more than a factor 2.
MaximalInequalityReport maximal_inequality_check(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x,
                                                 const std::vector<double>& t_list,
                                                 const std::vector<double>& R_list,
                                                 const PathEnsemble* refined = nullptr);

struct DecayReport {
  double R = 0.0;
  double u = 0.0;
  std::vector<double> times;          // m u
  std::vector<ProbabilityEstimate> q;  // P(sup_{s <= m u} |X_s - x| <= R)
  std::size_t fitted_points = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool truncated = false;  // some q_m was zero
  bool monotone = true;
  bool pass = false;
};

DecayReport multi_interval_decay(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x, double R,
                                 int m_max);

/// P^x(X_t < x) for every t.
std::vector<ProbabilityEstimate> spitzer_estimate(const PathEnsemble& ens, double x,
                                                  const std::vector<double>& t_list);

struct EtemadiRow {
  double t = 0.0;
  double v = 0.0;
  ProbabilityEstimate endpoint;  // |X_t - x| >= C v / 3
  ProbabilityEstimate maximum;   // running_sup >= C v
  double poisson_bound = 0.0;    // 1 - exp(-t nu{|y| > 2 C v})
  bool etemadi_holds = false;
  bool poisson_holds = false;
};

struct EtemadiReport {
  double C = 0.0;
  std::vector<EtemadiRow> rows;
  bool pass = false;
};

EtemadiReport etemadi_check(const PathEnsemble& ens, const std::function<double(double)>& v, double C,
                            const std::vector<double>& t_list);

struct CharfnRow {
  double t = 0.0;
  double xi = 0.0;
  ComplexMean lambda;
  double modulus = 0.0;
  double inf_re_p = 0.0;  // inf over the window of Re p(x, xi)
  double bound = 0.0;     // exp(-delta t inf_re_p)
  bool violation = false;  // modulus > bound + band
  bool deviation = false;  // |modulus - bound| > band
  bool in_scope = false;   // t among the two smallest levels
};

struct CharfnReport {
  double sector = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double band = 0.0;  // 4 / sqrt(N)
  std::vector<CharfnRow> rows;
  std::size_t violations_in_scope = 0;
  std::size_t points_in_scope = 0;
  std::size_t flagged_outside_scope = 0;
  std::size_t deviations = 0;
  bool pass = false;
};

/// |mean exp(i xi (X_t - x))| <= exp(-delta t inf_x Re p(x, xi)) + 4/sqrt(N) with
/// delta = 1 - c0 - epsilon; epsilon defaults to (1 - c0) / 2.
CharfnReport empirical_charfn_bound(const PathEnsemble& ens, const SymbolFamily& family,
                                    const std::vector<double>& xi_list, const std::vector<double>& t_list,
                                    std::optional<double> epsilon = std::nullopt);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

Quartiles quartiles(std::vector<double> values);

struct ChungStatistic {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<double> probe_times;
  std::vector<double> values;  // per path
  Quartiles summary;
  std::vector<double> exit_radii;
  std::vector<double> exit_values;  // per path, +inf when a radius is never reached
  Quartiles exit_summary;
};

/// Per path min over dyadic record times t_max 2^{-j} in [t_lo, t_hi] of
/// running_sup(t) / rate(t), plus the exit-time dual.
ChungStatistic chung_statistic(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x, double t_lo,
                               double t_hi);

/// Same with an explicit rate; the exit-time dual is omitted.
ChungStatistic chung_statistic(const PathEnsemble& ens, const std::function<double(double)>& rate, double t_lo,
                               double t_hi);

}  // namespace lil
