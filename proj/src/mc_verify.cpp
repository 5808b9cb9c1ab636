#include "lil/mc_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lil/error.hpp"
#include "lil/norming.hpp"

namespace lil {

namespace {

void require_paths(const PathEnsemble& ens) {
  if (ens.size() == 0) throw Error(Errc::empty_ensemble, "ensemble has no paths");
}

bool close_enough(double a, double b) {
  // Ratios are compared with a factor-2 rule; zeros on both sides count as stable.
  const double tiny = 1e-300;
  return a <= 2.0 * b + tiny && b <= 2.0 * a + tiny;
}

}  // namespace

ProbabilityEstimate proportion(std::size_t hits, std::size_t n) {
  if (n == 0) throw Error(Errc::empty_ensemble, "proportion of an empty sample");
  ProbabilityEstimate e;
  e.sample_size = n;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  e.standard_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

ProbabilityEstimate estimate_sup_probability(const PathEnsemble& ens, double t, double R, SupDirection direction) {
  require_paths(ens);
  if (!(R > 0.0)) throw Error(Errc::precondition, "radius must be positive");
  const std::size_t r = ens.record_of(t);
  const std::size_t hits = count_sup_at_least(ens, r, R);
  return proportion(direction == SupDirection::at_least ? hits : ens.size() - hits, ens.size());
}

namespace {

MaximalInequalityReport fit_maximal(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x,
                                    const std::vector<double>& t_list, const std::vector<double>& R_list) {
  MaximalInequalityReport rep;
  for (double R : R_list) {
    const double sup_b = ball_extremum_pU(measure, x, 1.0 / R, R, BallMode::sup);
    const double inf_b = ball_extremum_pU(measure, x, 1.0 / R, R, BallMode::inf);
    for (double t : t_list) {
      MaximalInequalityRow row;
      row.t = t;
      row.R = R;
      row.exceed = estimate_sup_probability(ens, t, R, SupDirection::at_least);
      row.stay = estimate_sup_probability(ens, t, R, SupDirection::below);
      row.sup_ball_pU = sup_b;
      row.inf_ball_pU = inf_b;
      const double denom = t * sup_b;
      if (row.exceed.p_hat == 0.0) {
        row.upper_ratio = 0.0;
      } else {
        row.upper_ratio = denom > 0.0 ? row.exceed.p_hat / denom : std::numeric_limits<double>::infinity();
      }
      row.lower_product = row.stay.p_hat * t * inf_b;
      rep.c1_hat = std::max(rep.c1_hat, row.upper_ratio);
      rep.c2_hat = std::max(rep.c2_hat, row.lower_product);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace

MaximalInequalityReport maximal_inequality_check(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x,
                                                 const std::vector<double>& t_list,
                                                 const std::vector<double>& R_list, const PathEnsemble* refined) {
  require_paths(ens);
  MaximalInequalityReport rep = fit_maximal(ens, measure, x, t_list, R_list);
  const bool finite = std::isfinite(rep.c1_hat) && std::isfinite(rep.c2_hat);
  rep.pass = finite;
  if (!finite) rep.note = "fitted constant is infinite";
  if (refined != nullptr) {
    const MaximalInequalityReport fine = fit_maximal(*refined, measure, x, t_list, R_list);
    rep.c1_refined = fine.c1_hat;
    rep.c2_refined = fine.c2_hat;
    const bool stable = std::isfinite(fine.c1_hat) && std::isfinite(fine.c2_hat) &&
                        close_enough(rep.c1_hat, fine.c1_hat) && close_enough(rep.c2_hat, fine.c2_hat);
    if (!stable) rep.note = "fitted constants moved by more than a factor 2 under refinement";
    rep.pass = rep.pass && stable;
  } else if (rep.pass) {
    rep.note = "no refined ensemble supplied; finiteness only";
  }
  return rep;
}

DecayReport multi_interval_decay(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x, double R,
                                 int m_max) {
  require_paths(ens);
  if (m_max < 2) throw Error(Errc::precondition, "m_max must be at least 2");
  DecayReport rep;
  rep.R = R;
  rep.u = u_of_R(measure, x, R);
  for (int m = 1; m <= m_max; ++m) {
    const double t = m * rep.u;
    const std::size_t r = ens.record_of(t);
    rep.times.push_back(ens.record_times()[r]);
    rep.q.push_back(proportion(count_sup_at_most(ens, r, R), ens.size()));
  }
  for (std::size_t k = 1; k < rep.q.size(); ++k) {
    if (rep.q[k].p_hat > rep.q[k - 1].p_hat) rep.monotone = false;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < rep.q.size(); ++k) {
    if (rep.q[k].p_hat <= 0.0) {
      rep.truncated = true;
      break;
    }
    xs.push_back(static_cast<double>(k + 1));
    ys.push_back(std::log(rep.q[k].p_hat));
  }
  rep.fitted_points = xs.size();
  if (xs.size() < 3) return rep;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  rep.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  rep.pass = rep.r_squared >= 0.98 && rep.slope < 0.0;
  return rep;
}

std::vector<ProbabilityEstimate> spitzer_estimate(const PathEnsemble& ens, double x,
                                                  const std::vector<double>& t_list) {
  require_paths(ens);
  std::vector<ProbabilityEstimate> out;
  for (double t : t_list) out.push_back(proportion(count_position_below(ens, ens.record_of(t), x), ens.size()));
  return out;
}

EtemadiReport etemadi_check(const PathEnsemble& ens, const std::function<double(double)>& v, double C,
                            const std::vector<double>& t_list) {
  require_paths(ens);
  if (!ens.process().triplet.state_independent() || ens.process().kind != ProcessSpec::Kind::levy) {
    throw Error(Errc::levy_only, "Etemadi check needs a Levy (state-independent) ensemble");
  }
  const LevyMeasureSpec& measure = ens.process().triplet.measure();
  EtemadiReport rep;
  rep.C = C;
  rep.pass = true;
  for (double t : t_list) {
    EtemadiRow row;
    row.t = t;
    row.v = v(t);
    const std::size_t r = ens.record_of(t);
    row.endpoint = proportion(count_displacement_at_least(ens, r, C * row.v / 3.0), ens.size());
    row.maximum = proportion(count_sup_at_least(ens, r, C * row.v), ens.size());
    row.poisson_bound = -std::expm1(-t * tail_mass(measure, ens.x0(), 2.0 * C * row.v));
    row.etemadi_holds =
        3.0 * row.endpoint.p_hat + 3.0 * row.endpoint.standard_error >= row.maximum.p_hat - 3.0 * row.maximum.standard_error;
    row.poisson_holds = row.maximum.p_hat + 3.0 * row.maximum.standard_error >= row.poisson_bound;
    rep.pass = rep.pass && row.etemadi_holds && row.poisson_holds;
    rep.rows.push_back(row);
  }
  return rep;
}

CharfnReport empirical_charfn_bound(const PathEnsemble& ens, const SymbolFamily& family,
                                    const std::vector<double>& xi_list, const std::vector<double>& t_list,
                                    std::optional<double> epsilon) {
  require_paths(ens);
  if (family.sector.unbounded_on_grid || !(family.sector.value < 1.0)) {
    throw Error(Errc::sector_too_large, "sector constant must be below 1");
  }
  CharfnReport rep;
  rep.sector = family.sector.value;
  rep.epsilon = epsilon.value_or(0.5 * (1.0 - rep.sector));
  rep.delta = 1.0 - rep.sector - rep.epsilon;
  if (!(rep.delta > 0.0) || rep.epsilon < 0.0) throw Error(Errc::precondition, "epsilon must leave delta > 0");
  rep.band = 4.0 / std::sqrt(static_cast<double>(ens.size()));

  std::vector<double> sorted_t = t_list;
  std::sort(sorted_t.begin(), sorted_t.end());
  sorted_t.erase(std::unique(sorted_t.begin(), sorted_t.end()), sorted_t.end());
  const double scope_edge = sorted_t.size() >= 2 ? sorted_t[1] : (sorted_t.empty() ? 0.0 : sorted_t[0]);

  const auto xs = window_samples(family.x_window, 9);
  for (double xi : xi_list) {
    double inf_re = std::numeric_limits<double>::infinity();
    if (xi == 0.0) {
      inf_re = 0.0;
    } else {
      for (double x : xs) inf_re = std::min(inf_re, eval_exponent(family.triplet, x, xi).re);
    }
    for (double t : t_list) {
      CharfnRow row;
      row.t = t;
      row.xi = xi;
      row.inf_re_p = inf_re;
      if (xi == 0.0) {
        row.lambda = {1.0, 0.0};
      } else {
        row.lambda = charfn_mean(ens, ens.record_of(t), xi);
      }
      row.modulus = std::hypot(row.lambda.re, row.lambda.im);
      row.bound = std::exp(-rep.delta * t * inf_re);
      row.violation = row.modulus > row.bound + rep.band;
      row.deviation = std::abs(row.modulus - row.bound) > rep.band;
      row.in_scope = t <= scope_edge;
      if (row.in_scope) {
        ++rep.points_in_scope;
        if (row.violation) ++rep.violations_in_scope;
      } else if (row.violation) {
        ++rep.flagged_outside_scope;
      }
      if (row.deviation) ++rep.deviations;
      rep.rows.push_back(row);
    }
  }
  rep.pass = static_cast<double>(rep.violations_in_scope) <= 0.01 * static_cast<double>(rep.points_in_scope);
  return rep;
}

Quartiles quartiles(std::vector<double> v) {
  if (v.empty()) throw Error(Errc::empty_ensemble, "quartiles of an empty sample");
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double w = pos - static_cast<double>(lo);
    if (w == 0.0 || !std::isfinite(v[hi])) return v[lo];
    return v[lo] + w * (v[hi] - v[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

namespace {

std::vector<std::size_t> dyadic_probes(const PathEnsemble& ens, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || t_hi < t_lo) throw Error(Errc::precondition, "probe window must satisfy 0 < t_lo <= t_hi");
  const auto& times = ens.record_times();
  const double t_max = ens.grid().t_max();
  const double tol = 1e-9;
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < times.size(); ++r) {
    const double t = times[r];
    if (t < t_lo * (1.0 - tol) || t > t_hi * (1.0 + tol)) continue;
    const double j = std::log2(t_max / t);
    if (std::abs(j - std::round(j)) < 1e-9) idx.push_back(r);
  }
  if (idx.empty() && t_lo == t_hi) {
    if (auto r = ens.find_record(t_lo)) idx.push_back(*r);
  }
  if (idx.empty()) throw Error(Errc::window_outside_grid, "no dyadic record time inside the probe window");
  return idx;
}

ChungStatistic ratio_statistic(const PathEnsemble& ens, const std::function<double(double)>& rate, double t_lo,
                               double t_hi) {
  require_paths(ens);
  ChungStatistic s;
  s.t_lo = t_lo;
  s.t_hi = t_hi;
  const auto idx = dyadic_probes(ens, t_lo, t_hi);
  std::vector<double> denom;
  for (auto r : idx) {
    const double t = ens.record_times()[r];
    s.probe_times.push_back(t);
    denom.push_back(rate(t));
  }
  s.values = min_sup_ratio(ens, idx, denom);
  s.summary = quartiles(s.values);
  return s;
}

}  // namespace

ChungStatistic chung_statistic(const PathEnsemble& ens, const std::function<double(double)>& rate, double t_lo,
                               double t_hi) {
  return ratio_statistic(ens, rate, t_lo, t_hi);
}

ChungStatistic chung_statistic(const PathEnsemble& ens, const LevyMeasureSpec& measure, double x, double t_lo,
                               double t_hi) {
  ChungStatistic s = ratio_statistic(
      ens, [&](double t) { return chung_rate(measure, x, t); }, t_lo, t_hi);
  std::vector<double> scales;
  for (double t : s.probe_times) {
    const double a = chung_rate(measure, x, t);
    if (!(a > 0.0 && a <= 1.0)) continue;
    const double u = u_of_R(measure, x, a);
    const double ll = std::log(std::abs(std::log(u)));
    if (!(u < 1.0 && ll > 0.0)) continue;
    s.exit_radii.push_back(a);
    scales.push_back(u * ll);
  }
  if (!s.exit_radii.empty()) {
    s.exit_values = max_exit_ratio(ens, s.exit_radii, scales);
    s.exit_summary = quartiles(s.exit_values);
  }
  return s;
}

}  // namespace lil
