#include "lil/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lil/error.hpp"

namespace lil {

namespace {

// Integral of e^{iu} u^{-beta} over (z, inf) by its asymptotic expansion.
// Accurate to machine precision for z >= 64 and beta <= 3.
std::complex<double> oscillatory_tail(double z, double beta) {
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> term = i * std::exp(i * z) * std::pow(z, -beta);
  std::complex<double> sum = term;
  double previous = std::abs(term);
  for (int k = 0; k < 200; ++k) {
    term *= -i * (beta + k) / z;
    const double size = std::abs(term);
    if (size > previous) break;
    sum += term;
    if (size < 1e-18 * std::abs(sum)) break;
    previous = size;
  }
  return sum;
}

// 1 - cos(v) without cancellation.
double one_minus_cos(double v) {
  const double s = std::sin(0.5 * v);
  return 2.0 * s * s;
}

double power_law_real_part(const PowerLawMeasure& pl, double truncation, double x, double a,
                           const QuadratureConfig& config) {
  const double alpha = pl.alpha_at(x);
  const double c = pl.c_at(x);
  // Below y0 the integrand is a^2 y^{1-alpha}/2 up to O((a y)^4).
  const double y0 = 1e-4 / a;
  const double head = 2.0 * c *
                      (a * a * std::pow(y0, 2.0 - alpha) / (2.0 * (2.0 - alpha)) -
                       std::pow(a, 4) * std::pow(y0, 4.0 - alpha) / (24.0 * (4.0 - alpha)));
  const double top = std::max(truncation, 64.0 / a);
  const double breaks[] = {1.0 / a, 1.0};
  auto f = [=](double y) { return 2.0 * c * one_minus_cos(a * y) * std::pow(y, -1.0 - alpha); };
  const QuadratureResult mid = integrate_radial(f, y0, top, breaks, a, config);
  require_converged(mid, config, "exponent (power law)");
  const double tail = 2.0 * c *
                      (std::pow(top, -alpha) / alpha -
                       std::pow(a, alpha) * oscillatory_tail(a * top, 1.0 + alpha).real());
  return head + mid.value + tail;
}

std::vector<double> tabulated_breaks(const TabulatedMeasure& t, double a) {
  std::vector<double> b;
  for (std::size_t j = 0; j < t.density_pos.size(); ++j) b.push_back(t.node(j));
  if (a > 0.0) b.push_back(1.0 / a);
  b.push_back(1.0);
  return b;
}

double tabulated_sym(const TabulatedMeasure& t, double y) { return t.density(y) + t.density(-y); }
double tabulated_diff(const TabulatedMeasure& t, double y) { return t.density(y) - t.density(-y); }

}  // namespace

ComplexValue eval_exponent(const LevyTriplet& triplet, double x, double xi,
                           const QuadratureConfig& config) {
  if (xi == 0.0) return {0.0, 0.0};
  const LevyMeasureSpec& m = triplet.measure();
  const double a = std::abs(xi);
  ComplexValue p;

  if (const auto* pl = std::get_if<PowerLawMeasure>(&m.shape)) {
    p.re = power_law_real_part(*pl, m.truncation_radius, x, a, config);
  } else if (const auto* at = std::get_if<AtomicMeasure>(&m.shape)) {
    const bool symmetric = m.is_symmetric();
    for (const auto& atom : at->atoms) {
      const double v = xi * atom.location;
      p.re += atom.mass * one_minus_cos(v);
      if (!symmetric) {
        const double comp = std::abs(atom.location) <= 1.0 ? v : 0.0;
        p.im += atom.mass * (comp - std::sin(v));
      }
    }
  } else {
    const auto& t = std::get<TabulatedMeasure>(m.shape);
    const double top = std::min(t.y_max, m.truncation_radius);
    const auto breaks = tabulated_breaks(t, a);
    auto fre = [&](double y) { return one_minus_cos(a * y) * tabulated_sym(t, y); };
    const QuadratureResult re = integrate_radial(fre, t.y_min, top, breaks, a, config);
    require_converged(re, config, "exponent (tabulated, real part)");
    p.re = re.value;
    if (!m.is_symmetric()) {
      auto fim = [&](double y) {
        const double comp = y <= 1.0 ? xi * y : 0.0;
        return (comp - std::sin(xi * y)) * tabulated_diff(t, y);
      };
      const QuadratureResult im = integrate_radial(fim, t.y_min, top, breaks, a, config);
      require_converged(im, config, "exponent (tabulated, imaginary part)");
      p.im = im.value;
    }
  }
  p.im += triplet.drift()(x) * xi;
  return p;
}

double eval_pU(const LevyMeasureSpec& m, double x, double xi, PUMethod method,
               const QuadratureConfig& config) {
  if (xi == 0.0) return 0.0;
  const double a = std::abs(xi);

  if (const auto* pl = std::get_if<PowerLawMeasure>(&m.shape)) {
    const double alpha = pl->alpha_at(x);
    const double c = pl->c_at(x);
    if (method == PUMethod::automatic) {
      return 4.0 * c * std::pow(a, alpha) / (alpha * (2.0 - alpha));
    }
    const double y0 = 1e-4 / a;
    const double head = 2.0 * c * a * a * std::pow(y0, 2.0 - alpha) / (2.0 - alpha);
    const double top = std::max(m.truncation_radius, 2.0 / a);
    const double breaks[] = {1.0 / a, 1.0};
    auto f = [=](double y) { return 2.0 * c * std::min(a * a * y * y, 1.0) * std::pow(y, -1.0 - alpha); };
    const QuadratureResult mid = integrate_radial(f, y0, top, breaks, 0.0, config);
    require_converged(mid, config, "p^U (power law)");
    return head + mid.value + 2.0 * c * std::pow(top, -alpha) / alpha;
  }
  if (const auto* at = std::get_if<AtomicMeasure>(&m.shape)) {
    double s = 0.0;
    for (const auto& atom : at->atoms) {
      const double v = a * atom.location;
      s += atom.mass * std::min(v * v, 1.0);
    }
    return s;
  }
  const auto& t = std::get<TabulatedMeasure>(m.shape);
  const double top = std::min(t.y_max, m.truncation_radius);
  const auto breaks = tabulated_breaks(t, a);
  auto f = [&](double y) { return std::min(a * a * y * y, 1.0) * tabulated_sym(t, y); };
  const QuadratureResult r = integrate_radial(f, t.y_min, top, breaks, 0.0, config);
  require_converged(r, config, "p^U (tabulated)");
  return r.value;
}

double tail_mass(const LevyMeasureSpec& m, double x, double r, const QuadratureConfig& config) {
  if (!(r > 0.0)) throw Error(Errc::precondition, "tail_mass needs r > 0");
  if (const auto* pl = std::get_if<PowerLawMeasure>(&m.shape)) {
    const double alpha = pl->alpha_at(x);
    return 2.0 * pl->c_at(x) * std::pow(r, -alpha) / alpha;
  }
  if (const auto* at = std::get_if<AtomicMeasure>(&m.shape)) {
    double s = 0.0;
    for (const auto& atom : at->atoms) {
      if (std::abs(atom.location) > r) s += atom.mass;
    }
    return s;
  }
  const auto& t = std::get<TabulatedMeasure>(m.shape);
  const double lo = std::max(r, t.y_min);
  const double top = std::min(t.y_max, m.truncation_radius);
  if (!(top > lo)) return 0.0;
  const auto breaks = tabulated_breaks(t, 0.0);
  auto f = [&](double y) { return tabulated_sym(t, y); };
  const QuadratureResult q = integrate_radial(f, lo, top, breaks, 0.0, config);
  require_converged(q, config, "tail mass (tabulated)");
  return q.value;
}

std::vector<double> window_samples(Interval window, std::size_t count) {
  if (count <= 1 || window.width() <= 0.0) return {window.lo};
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = window.lo + window.width() * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return xs;
}

SectorEstimate sector_estimate(const LevyTriplet& triplet, Interval x_window,
                               std::vector<double> xi_grid, const QuadratureConfig& config) {
  if (xi_grid.empty()) throw Error(Errc::precondition, "sector_estimate needs a nonempty grid");
  if (std::any_of(xi_grid.begin(), xi_grid.end(), [](double v) { return v == 0.0; })) {
    throw Error(Errc::precondition, "sector_estimate grid must not contain xi = 0");
  }
  const auto xs = window_samples(x_window, 9);
  auto ratio_sup = [&](const std::vector<double>& xis) {
    double sup = 0.0;
    for (double x : xs) {
      for (double xi : xis) {
        const ComplexValue p = eval_exponent(triplet, x, xi, config);
        if (p.re == 0.0 && p.im == 0.0) continue;
        // Re p at rounding level relative to Im p counts as zero
        if (p.re <= 1e-12 * std::abs(p.im)) {
          throw Error(Errc::sector_violated, "Re p = 0 with Im p != 0 at xi = " + std::to_string(xi));
        }
        sup = std::max(sup, std::abs(p.im) / p.re);
      }
    }
    return sup;
  };

  std::sort(xi_grid.begin(), xi_grid.end());
  xi_grid.erase(std::unique(xi_grid.begin(), xi_grid.end()), xi_grid.end());

  SectorEstimate est;
  double running = ratio_sup(xi_grid);
  est.refinement_sups.push_back(running);
  for (int level = 0; level < 4; ++level) {
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < xi_grid.size(); ++i) {
      const double mid = 0.5 * (xi_grid[i] + xi_grid[i + 1]);
      if (mid != 0.0) mids.push_back(mid);
    }
    running = std::max(running, ratio_sup(mids));
    est.refinement_sups.push_back(running);
    xi_grid.insert(xi_grid.end(), mids.begin(), mids.end());
    std::sort(xi_grid.begin(), xi_grid.end());
  }
  const auto n = est.refinement_sups.size();
  est.unbounded_on_grid = est.refinement_sups[n - 1] > 1.1 * est.refinement_sups[n - 2];
  est.value = est.refinement_sups.back();
  return est;
}

LowerEnvelope::LowerEnvelope(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.empty() || nodes_.size() != values_.size()) {
    throw Error(Errc::precondition, "lower envelope needs matching nonempty node/value tables");
  }
}

double LowerEnvelope::operator()(double xi) const {
  const double a = std::abs(xi);
  if (analytic_) return analytic_(a);
  if (a <= nodes_.front()) return values_.front();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), a);
  return values_[static_cast<std::size_t>(it - nodes_.begin()) - 1];
}

LowerEnvelope build_lower_envelope(const LevyTriplet& triplet, Interval x_window, double xi_max,
                                   std::size_t nodes, const QuadratureConfig& config) {
  if (!(xi_max > 1.0) || nodes < 2) throw Error(Errc::precondition, "lower envelope needs xi_max > 1");
  const auto xs = window_samples(x_window, 9);
  std::vector<double> grid(nodes);
  std::vector<double> inf(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    grid[k] = std::pow(xi_max, static_cast<double>(k) / static_cast<double>(nodes - 1));
    double m = std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::min(m, eval_exponent(triplet, x, grid[k], config).re);
    inf[k] = m;
  }
  for (std::size_t k = nodes - 1; k-- > 0;) inf[k] = std::min(inf[k], inf[k + 1]);
  return LowerEnvelope(std::move(grid), std::move(inf));
}

double coefficient_bound(const LevyTriplet& triplet, Interval x_window,
                         const QuadratureConfig& config) {
  double sup = 0.0;
  for (double x : window_samples(x_window, 9)) {
    for (int k = -20; k <= 20; ++k) {
      sup = std::max(sup, eval_exponent(triplet, x, k / 20.0, config).abs());
    }
  }
  return 2.0 * sup;
}

std::size_t SymbolFamily::count_envelope_violations(const std::vector<double>& xi_grid,
                                                    std::size_t x_samples) const {
  std::size_t bad = 0;
  for (double x : window_samples(x_window, x_samples)) {
    for (double xi : xi_grid) {
      if (std::abs(xi) < 1.0) continue;
      const double re = eval_exponent(triplet, x, xi).re;
      if (g(xi) > re * (1.0 + 1e-9) || re > coefficient_bound * (1.0 + xi * xi)) ++bad;
    }
  }
  return bad;
}

SymbolFamily build_symbol_family(const LevyTriplet& triplet, Interval x_window,
                                 const std::vector<double>& xi_grid, double xi_max,
                                 const QuadratureConfig& config) {
  return SymbolFamily{triplet, x_window, sector_estimate(triplet, x_window, xi_grid, config),
                      build_lower_envelope(triplet, x_window, xi_max, 129, config),
                      coefficient_bound(triplet, x_window, config)};
}

}  // namespace lil
