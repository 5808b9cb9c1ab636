#include "lil/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lil/error.hpp"

namespace lil {

namespace {

QuadratureResult integrate_panel_log(const std::function<double(double)>& f, double lo, double hi,
                                     const QuadratureConfig& config) {
  auto g = [&f](double s) {
    const double y = std::exp(s);
    return f(y) * y;
  };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      g, std::log(lo), std::log(hi), config.max_depth, config.rel_tol * 1e-2, &err);
  return {value, err};
}

}  // namespace

QuadratureResult integrate_radial(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double oscillation,
                                  const QuadratureConfig& config) {
  QuadratureResult total;
  if (!(b > a)) return total;
  if (!(a > 0.0)) throw Error(Errc::precondition, "integrate_radial needs a > 0");

  std::vector<double> cuts{a, b};
  for (double bp : breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double c0 = cuts[i];
    const double c1 = cuts[i + 1];
    const auto n_log = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(c1 / c0))));
    const double ratio = std::pow(c1 / c0, 1.0 / static_cast<double>(n_log));
    double p0 = c0;
    for (std::size_t k = 0; k < n_log; ++k) {
      const double p1 = (k + 1 == n_log) ? c1 : p0 * ratio;
      std::size_t m = 1;
      if (oscillation > 0.0) {
        m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(oscillation * (p1 - p0) / std::numbers::pi)));
      }
      const double w = (p1 - p0) / static_cast<double>(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double q0 = p0 + w * static_cast<double>(j);
        const double q1 = (j + 1 == m) ? p1 : q0 + w;
        total += integrate_panel_log(f, q0, q1, config);
      }
      p0 = p1;
    }
  }
  return total;
}

void require_converged(const QuadratureResult& result, const QuadratureConfig& config,
                       const char* what) {
  const double allowed = std::max(config.abs_tol, config.rel_tol * std::abs(result.value));
  if (!std::isfinite(result.value) || result.error > allowed) {
    std::ostringstream os;
    os << what << ": achieved error estimate " << result.error << " exceeds " << allowed;
    throw Error(Errc::quadrature_failure, os.str());
  }
}

double integrate_log_fixed(const std::function<double(double)>& f, double a, double b) {
  auto g = [&f](double s) {
    const double t = std::exp(s);
    return f(t) * t;
  };
  return boost::math::quadrature::gauss<double, 20>::integrate(g, std::log(a), std::log(b));
}

}  // namespace lil
