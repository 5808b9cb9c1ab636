#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "lil/measure.hpp"
#include "lil/quadrature.hpp"

namespace lil {

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> as_complex() const { return {re, im}; }
  double abs() const { return std::hypot(re, im); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

enum class PUMethod { automatic, quadrature };

/// p(x, xi) = i l(x) xi + int (1 - e^{i xi y} + i xi y 1{|y| <= 1}) nu(x, dy).
ComplexValue eval_exponent(const LevyTriplet& triplet, double x, double xi,
                           const QuadratureConfig& config = {});

/// p^U(x, xi) = int min(|xi y|^2, 1) nu(x, dy). `automatic` uses the closed form
/// for power-law measures; `quadrature` always integrates.
double eval_pU(const LevyMeasureSpec& measure, double x, double xi,
               PUMethod method = PUMethod::automatic, const QuadratureConfig& config = {});

/// nu(x, {|y| > r}).
double tail_mass(const LevyMeasureSpec& measure, double x, double r,
                 const QuadratureConfig& config = {});

struct SectorEstimate {
  bool unbounded_on_grid = false;
  double value = 0.0;                  // meaningful when bounded
  std::vector<double> refinement_sups;  // running sup after each grid doubling
};

/// sup |Im p| / Re p over the x-window and xi grid, with four midpoint
/// refinements of the xi grid. Flags growth of more than 10% at the last one.
SectorEstimate sector_estimate(const LevyTriplet& triplet, Interval x_window,
                               std::vector<double> xi_grid, const QuadratureConfig& config = {});

/// Monotone increasing minorant g of Re p(x, .) on |xi| >= 1.
class LowerEnvelope {
 public:
  LowerEnvelope() = default;
  explicit LowerEnvelope(std::function<double(double)> analytic) : analytic_(std::move(analytic)) {}
  /// Step function: g = values[k] on [nodes[k], nodes[k+1]).
  LowerEnvelope(std::vector<double> nodes, std::vector<double> values);

  double operator()(double xi) const;
  bool is_tabulated() const { return !analytic_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::function<double(double)> analytic_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// inf over the x-window of Re p(x, xi), sampled on a log grid in [1, xi_max],
/// then made monotone by a suffix minimum (largest monotone minorant of the samples).
LowerEnvelope build_lower_envelope(const LevyTriplet& triplet, Interval x_window, double xi_max,
                                   std::size_t nodes = 129, const QuadratureConfig& config = {});

struct SymbolFamily {
  LevyTriplet triplet;
  Interval x_window;
  SectorEstimate sector;
  LowerEnvelope g;
  double coefficient_bound = 0.0;  // C_p

  /// Re-checks g <= Re p <= C_p (1 + xi^2) on the given grid; returns the number
  /// of violating (x, xi) pairs.
  std::size_t count_envelope_violations(const std::vector<double>& xi_grid,
                                        std::size_t x_samples = 9) const;
};

/// C_p = 2 sup_x sup_{|eta| <= 1} |p(x, eta)| sampled over the window.
double coefficient_bound(const LevyTriplet& triplet, Interval x_window,
                         const QuadratureConfig& config = {});

SymbolFamily build_symbol_family(const LevyTriplet& triplet, Interval x_window,
                                 const std::vector<double>& xi_grid, double xi_max = 1e3,
                                 const QuadratureConfig& config = {});

/// Evenly spaced samples of the window (one point when degenerate).
std::vector<double> window_samples(Interval window, std::size_t count);

}  // namespace lil
