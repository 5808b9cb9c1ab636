#include "lil/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lil/error.hpp"
#include "lil/norming.hpp"
#include "lil/quadrature.hpp"

namespace lil {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (sxx > 0.0 && syy > 0.0) ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

std::vector<double> dyadic_times(double t_max, int levels) {
  std::vector<double> t(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) t[static_cast<std::size_t>(k)] = std::ldexp(t_max, -k);
  return t;
}

}  // namespace

const char* to_string(TestVerdict::Kind kind) {
  switch (kind) {
    case TestVerdict::Kind::convergent: return "convergent";
    case TestVerdict::Kind::divergent: return "divergent";
    case TestVerdict::Kind::inconclusive: return "inconclusive";
    case TestVerdict::Kind::zero: return "zero";
    case TestVerdict::Kind::positive_finite: return "positive-finite";
    case TestVerdict::Kind::infinite: return "infinite";
  }
  return "unknown";
}

TestVerdict decide_integral(std::vector<double> blocks, double t_max,
                            const ClassifierConfig& config) {
  const int levels = static_cast<int>(blocks.size()) - 1;
  if (levels < 8) throw Error(Errc::precondition, "integral classifier needs K >= 8");
  if (!(t_max > 0.0 && t_max < 0.5)) {
    throw Error(Errc::precondition, "integral classifier needs t_max in (0, 1/2)");
  }
  TestVerdict v;
  v.block_times = dyadic_times(t_max, levels);
  v.block_times.pop_back();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (!(blocks[k] >= 0.0) || !std::isfinite(blocks[k])) {
      std::ostringstream os;
      os << "block " << k << " integral is " << blocks[k];
      throw Error(Errc::precondition, os.str());
    }
  }
  v.block_values = std::move(blocks);

  // Fit window: last K/2 blocks with positive value.
  std::vector<double> ks, logs, logL, logI;
  const double base = std::log2(1.0 / t_max);
  for (int k = levels / 2; k <= levels; ++k) {
    const double value = v.block_values[static_cast<std::size_t>(k)];
    if (value <= 0.0) continue;
    ks.push_back(k);
    logI.push_back(std::log(value));
    logL.push_back(std::log(base + k + 0.5));
  }
  if (v.block_values.back() == 0.0 || ks.size() < 3) {
    v.verdict = TestVerdict::Kind::convergent;
    v.fitted_ratio = 0.0;
    v.fitted_exponent = std::numeric_limits<double>::infinity();
    v.fitted_log_power = std::numeric_limits<double>::infinity();
    v.confidence_note = "integrand vanishes near 0 over the fit window";
    return v;
  }
  const LineFit geometric = least_squares(ks, logI);
  const LineFit power = least_squares(logL, logI);
  v.fitted_ratio = std::exp(geometric.slope);
  v.fitted_exponent = -geometric.slope / std::numbers::ln2;
  v.fitted_log_power = -power.slope;

  const bool geometric_decay = v.fitted_ratio <= 1.0 - config.delta_r;
  std::ostringstream note;
  note << "fit over blocks " << levels / 2 << ".." << levels << ": ratio " << v.fitted_ratio
       << ", |log t| power " << v.fitted_log_power;
  if (v.fitted_log_power >= 1.0 + config.delta_p) {
    v.verdict = TestVerdict::Kind::convergent;
    note << (geometric_decay ? " (geometric decay)" : " (logarithmic decay, summable)");
  } else if (v.fitted_log_power <= 1.0 + config.divergence_margin) {
    v.verdict = TestVerdict::Kind::divergent;
    note << " (blocks not summable)";
  } else {
    v.verdict = TestVerdict::Kind::inconclusive;
    note << " (between thresholds)";
  }
  v.confidence_note = note.str();
  return v;
}

TestVerdict classify_integral_at_zero(const std::function<double(double)>& integrand, double t_max,
                                      int levels, const ClassifierConfig& config) {
  if (levels < 8) throw Error(Errc::precondition, "integral classifier needs K >= 8");
  std::vector<double> blocks(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) {
    const double hi = std::ldexp(t_max, -k);
    try {
      blocks[static_cast<std::size_t>(k)] = integrate_log_fixed(integrand, 0.5 * hi, hi);
    } catch (const Error& e) {
      throw Error(e.code(), std::string("block ") + std::to_string(k) + ": " + e.what());
    }
  }
  return decide_integral(std::move(blocks), t_max, config);
}

TestVerdict upper_function_test(const LevyMeasureSpec& measure, double x, double epsilon, int n,
                                double t_max, int levels, UpperNorming norming,
                                const ClassifierConfig& config) {
  auto v_of = [&](double t) {
    return norming == UpperNorming::iterated_log ? upper_norming_v(measure, x, t, epsilon, n)
                                                 : plain_norming_v(measure, x, t);
  };
  auto integrand = [&](double t) {
    const double v = v_of(t);
    return ball_extremum_pU(measure, x, 1.0 / v, v, BallMode::sup);
  };
  return classify_integral_at_zero(integrand, t_max, levels, config);
}

TestVerdict lower_tail_test(const LevyMeasureSpec& measure, const std::function<double(double)>& v,
                            double C, double t_max, int levels, const ClassifierConfig& config) {
  if (!measure.state_independent()) {
    throw Error(Errc::levy_only, "lower tail test needs a state-independent measure");
  }
  if (!(C > 0.0)) throw Error(Errc::precondition, "lower tail test needs C > 0");
  auto integrand = [&](double t) { return tail_mass(measure, 0.0, 2.0 * C * v(t)); };
  return classify_integral_at_zero(integrand, t_max, levels, config);
}

TestVerdict decide_liminf(const std::vector<double>& samples, double t_max,
                          const ClassifierConfig& config) {
  const int levels = static_cast<int>(samples.size()) - 1;
  if (levels < 8) throw Error(Errc::precondition, "liminf classifier needs K >= 8");
  if (!(t_max > 0.0 && t_max < 1.0)) throw Error(Errc::precondition, "liminf classifier needs t_max < 1");
  TestVerdict v;
  v.block_times = dyadic_times(t_max, levels);
  v.block_values = samples;
  std::vector<double> minima(samples.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t j = samples.size(); j-- > 0;) {
    if (!(samples[j] >= 0.0)) throw Error(Errc::precondition, "t g(1/w(t)) must be nonnegative");
    running = std::min(running, samples[j]);
    minima[j] = running;
  }

  const std::size_t first = static_cast<std::size_t>(3 * levels / 4);
  std::vector<double> logL, logm, tail;
  bool has_zero = false;
  for (std::size_t j = first; j < samples.size(); ++j) {
    tail.push_back(minima[j]);
    if (samples[j] <= 0.0) {
      has_zero = true;
      continue;
    }
    logL.push_back(std::log(std::abs(std::log(v.block_times[j]))));
    logm.push_back(std::log(samples[j]));
  }
  const double trend = logL.size() >= 2 ? least_squares(logL, logm).slope : 0.0;
  v.fitted_log_power = trend;

  std::vector<double> sorted = tail;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double spread = median > 0.0 ? (sorted.back() - sorted.front()) / median
                                      : std::numeric_limits<double>::infinity();

  std::ostringstream note;
  note << "last-quarter trend " << trend << " vs log|log t|, spread " << spread;
  if (std::isinf(sorted.front()) || trend >= config.trend) {
    v.verdict = TestVerdict::Kind::infinite;
  } else if (has_zero || trend <= -config.trend || sorted.front() < config.delta_z) {
    v.verdict = TestVerdict::Kind::zero;
  } else if (spread <= config.spread) {
    v.verdict = TestVerdict::Kind::positive_finite;
    v.c = median;
  } else {
    v.verdict = TestVerdict::Kind::inconclusive;
  }
  v.confidence_note = note.str();
  return v;
}

TestVerdict symbol_liminf_test(const std::function<double(double)>& g,
                               const std::function<double(double)>& w, double t_max, int levels,
                               const ClassifierConfig& config) {
  if (levels < 8) throw Error(Errc::precondition, "liminf classifier needs K >= 8");
  const auto times = dyadic_times(t_max, levels);
  std::vector<double> ws(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    ws[j] = w(times[j]);
    if (!(ws[j] > 0.0)) throw Error(Errc::precondition, "w must be positive on the probe grid");
    if (j > 0 && ws[j] > ws[j - 1]) {
      throw Error(Errc::precondition, "w must decrease along the probe grid t_j -> 0");
    }
  }
  std::vector<double> samples(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) samples[j] = times[j] * g(1.0 / ws[j]);
  return decide_liminf(samples, t_max, config);
}

}  // namespace lil
