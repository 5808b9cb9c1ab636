#include "lil/norming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "lil/error.hpp"

namespace lil {

namespace {

struct PowerConstants {
  double alpha;
  double k;  // p^U(xi) = k |xi|^alpha
};

std::optional<PowerConstants> constant_power_law(const LevyMeasureSpec& m) {
  const auto* pl = std::get_if<PowerLawMeasure>(&m.shape);
  if (!pl || !m.state_independent()) return std::nullopt;
  const double alpha = pl->alpha_at(0.0);
  return PowerConstants{alpha, 4.0 * pl->c_at(0.0) / (alpha * (2.0 - alpha))};
}

// Minimizes `h` on [a, b] by golden-section search to width `tol`.
template <class F>
std::pair<double, double> golden_min(F&& h, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double hc = h(c);
  double hd = h(d);
  while (b - a > tol) {
    if (hc < hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - invphi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + invphi * (b - a);
      hd = h(d);
    }
  }
  const double y = 0.5 * (a + b);
  return {y, h(y)};
}

}  // namespace

double ball_extremum_pU(const LevyMeasureSpec& measure, double x, double xi, double radius,
                        BallMode mode) {
  if (measure.state_independent() || radius <= 0.0) return eval_pU(measure, x, xi);
  const double sign = mode == BallMode::inf ? 1.0 : -1.0;
  auto h = [&](double y) { return sign * eval_pU(measure, y, xi); };

  constexpr int points = 257;
  const double lo = x - radius;
  const double step = 2.0 * radius / (points - 1);
  int best = 0;
  double best_h = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double v = h(k == points - 1 ? x + radius : lo + step * k);
    if (v < best_h) {
      best_h = v;
      best = k;
    }
  }
  const double a = lo + step * std::max(best - 1, 0);
  const double b = std::min(lo + step * std::min(best + 1, points - 1), x + radius);
  const auto [y, hy] = golden_min(h, a, b, 1e-12);
  (void)y;
  return sign * std::min(best_h, hy);
}

double pU_ball_extremum(const LevyMeasureSpec& measure, double x, double R, int radius_multiple,
                        BallMode mode) {
  if (!(R > 0.0 && R <= 1.0)) throw Error(Errc::precondition, "ball extremum needs R in (0,1]");
  if (radius_multiple != 2 && radius_multiple != 3 && radius_multiple != 6) {
    throw Error(Errc::precondition, "radius multiple must be 2, 3 or 6");
  }
  return ball_extremum_pU(measure, x, 1.0 / R, radius_multiple * R, mode);
}

double u_of_R(const LevyMeasureSpec& measure, double x, double R) {
  const double inf = pU_ball_extremum(measure, x, R, 3, BallMode::inf);
  if (!(inf > 0.0)) throw Error(Errc::degenerate_measure, "inf of p^U over the ball is zero");
  return 1.0 / inf;
}

double u_inverse(const LevyMeasureSpec& measure, double x, double rho) {
  if (!(rho > 0.0)) throw Error(Errc::rho_out_of_range, "rho must be positive");
  if (rho > u_of_R(measure, x, 1.0)) throw Error(Errc::rho_out_of_range, "rho above u(x, 1)");
  double lo = 1e-12;
  if (u_of_R(measure, x, lo) >= rho) {
    throw Error(Errc::rho_out_of_range, "rho below u(x, 1e-12)");
  }
  double hi = lo;
  while (true) {
    hi = std::min(2.0 * lo, 1.0);
    if (u_of_R(measure, x, hi) >= rho) break;
    lo = hi;
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (u_of_R(measure, x, mid) >= rho) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double chung_rate(const LevyMeasureSpec& measure, double x, double t) {
  if (!(t > 0.0 && t < std::exp(-1.0))) {
    throw Error(Errc::domain_error, "chung_rate needs t in (0, 1/e)");
  }
  return u_inverse(measure, x, t / std::log(std::abs(std::log(t))));
}

double iterated_log_factor(double t, double epsilon, int n) {
  if (!(t > 0.0) || n < 1 || epsilon < 0.0) {
    throw Error(Errc::precondition, "iterated_log_factor needs t > 0, n >= 1, epsilon >= 0");
  }
  double level = t;
  double product = 1.0;
  for (int k = 1; k <= n; ++k) {
    level = std::abs(std::log(level));
    if (!(level > 1.0)) {
      throw Error(Errc::iterated_log_undefined,
                  "iterated log number " + std::to_string(k) + " does not exceed 1");
    }
    product *= (k == n) ? std::pow(level, 1.0 + epsilon) : level;
  }
  return product;
}

double pU_inverse(const LevyMeasureSpec& measure, double x, double s, VMethod method) {
  if (method == VMethod::automatic) {
    if (const auto* pl = std::get_if<PowerLawMeasure>(&measure.shape)) {
      const double alpha = pl->alpha_at(x);
      const double k = 4.0 * pl->c_at(x) / (alpha * (2.0 - alpha));
      return std::pow(s / k, 1.0 / alpha);
    }
  }
  auto f = [&](double xi) { return eval_pU(measure, x, xi); };
  double lo = 1.0;
  double flo = f(lo);
  if (!(s >= flo)) throw Error(Errc::inverse_undefined, "target below p^U(x, 1)");
  // Probe grid xi = 2^{k/4}; p^U must increase strictly along it.
  double hi = lo;
  double fhi = flo;
  while (fhi < s) {
    lo = hi;
    flo = fhi;
    hi = lo * std::pow(2.0, 0.25);
    fhi = f(hi);
    if (!(fhi > flo) || !std::isfinite(hi) || hi > 1e300) {
      throw Error(Errc::inverse_undefined, "p^U not strictly increasing past xi = 1");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= s) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double upper_norming_v(const LevyMeasureSpec& measure, double x, double t, double epsilon, int n,
                       VMethod method) {
  const double ell = iterated_log_factor(t, epsilon, n);
  return 1.0 / pU_inverse(measure, x, 1.0 / (t * ell), method);
}

double plain_norming_v(const LevyMeasureSpec& measure, double x, double t, VMethod method) {
  if (!(t > 0.0)) throw Error(Errc::precondition, "plain_norming_v needs t > 0");
  return 1.0 / pU_inverse(measure, x, 1.0 / t, method);
}

KappaEstimate kappa_estimate(const LevyMeasureSpec& measure, double x,
                             const std::vector<double>& R_grid) {
  KappaEstimate est;
  est.x = x;
  est.R_grid = R_grid;
  for (double R : R_grid) {
    if (!(R > 0.0 && R <= 1.0)) throw Error(Errc::precondition, "kappa grid must lie in (0,1]");
    const double num = pU_ball_extremum(measure, x, R, 2, BallMode::sup);
    const double den = pU_ball_extremum(measure, x, R, 3, BallMode::inf);
    if (!(den > 0.0)) throw Error(Errc::degenerate_measure, "inf of p^U over the ball is zero");
    est.kappa_values.push_back(num / den);
    est.kappa = std::max(est.kappa, num / den);
  }
  return est;
}

NormingFunction::NormingFunction(Kind kind, double x, Form form, Interval domain,
                                 std::function<double(double)> evaluator)
    : kind_(kind), x_(x), form_(form), domain_(domain), eval_(std::move(evaluator)) {}

double NormingFunction::operator()(double arg) const {
  if (!domain_.contains(arg)) {
    throw Error(Errc::domain_error, name() + " argument outside its domain");
  }
  return eval_(arg);
}

std::string NormingFunction::name() const {
  switch (kind_) {
    case Kind::u: return "u";
    case Kind::u_inverse: return "u_inverse";
    case Kind::chung_rate: return "chung_rate";
    case Kind::upper_v: return "upper_v";
    case Kind::symbol_w: return "symbol_w";
  }
  return "norming";
}

NormingFunction NormingFunction::tabulate(const std::vector<double>& grid) const {
  if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end()) || !(grid.front() > 0.0)) {
    throw Error(Errc::precondition, "tabulation grid must be ascending, positive, size >= 2");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (double g : grid) {
    lx.push_back(std::log(g));
    ly.push_back(std::log((*this)(g)));
  }
  auto interp = [lx = std::move(lx), ly = std::move(ly)](double arg) {
    const double l = std::log(arg);
    auto it = std::upper_bound(lx.begin(), lx.end(), l);
    std::size_t j = it == lx.begin() ? 0 : static_cast<std::size_t>(it - lx.begin()) - 1;
    j = std::min(j, lx.size() - 2);
    const double w = (l - lx[j]) / (lx[j + 1] - lx[j]);
    return std::exp((1.0 - w) * ly[j] + w * ly[j + 1]);
  };
  return NormingFunction(kind_, x_, Form::tabulated, Interval{grid.front(), grid.back()},
                         std::move(interp));
}

void NormingFunction::write_csv(std::ostream& os, const std::vector<double>& args) const {
  os << "argument,value\n";
  os.precision(17);
  for (double a : args) os << a << ',' << (*this)(a) << '\n';
}

NormingFunction make_u(const LevyMeasureSpec& measure, double x) {
  if (auto pc = constant_power_law(measure)) {
    return NormingFunction(NormingFunction::Kind::u, x, NormingFunction::Form::closed_form,
                           Interval{0.0, 1.0},
                           [pc = *pc](double R) { return std::pow(R, pc.alpha) / pc.k; });
  }
  return NormingFunction(NormingFunction::Kind::u, x, NormingFunction::Form::numeric,
                         Interval{0.0, 1.0},
                         [measure, x](double R) { return u_of_R(measure, x, R); });
}

NormingFunction make_u_inverse(const LevyMeasureSpec& measure, double x) {
  const Interval domain{0.0, u_of_R(measure, x, 1.0)};
  if (auto pc = constant_power_law(measure)) {
    return NormingFunction(NormingFunction::Kind::u_inverse, x, NormingFunction::Form::closed_form,
                           domain,
                           [pc = *pc](double rho) { return std::pow(rho * pc.k, 1.0 / pc.alpha); });
  }
  return NormingFunction(NormingFunction::Kind::u_inverse, x, NormingFunction::Form::numeric,
                         domain, [measure, x](double rho) { return u_inverse(measure, x, rho); });
}

NormingFunction make_chung_rate(const LevyMeasureSpec& measure, double x) {
  const Interval domain{0.0, std::exp(-1.0)};
  if (auto pc = constant_power_law(measure)) {
    return NormingFunction(NormingFunction::Kind::chung_rate, x,
                           NormingFunction::Form::closed_form, domain, [pc = *pc](double t) {
                             const double rho = t / std::log(std::abs(std::log(t)));
                             return std::pow(rho * pc.k, 1.0 / pc.alpha);
                           });
  }
  return NormingFunction(NormingFunction::Kind::chung_rate, x, NormingFunction::Form::numeric,
                         domain, [measure, x](double t) { return chung_rate(measure, x, t); });
}

NormingFunction make_upper_v(const LevyMeasureSpec& measure, double x, double epsilon, int n) {
  const auto form = measure.is_power_law() ? NormingFunction::Form::closed_form
                                           : NormingFunction::Form::numeric;
  return NormingFunction(NormingFunction::Kind::upper_v, x, form, Interval{0.0, std::exp(-1.0)},
                         [measure, x, epsilon, n](double t) {
                           return upper_norming_v(measure, x, t, epsilon, n);
                         });
}

}  // namespace lil
