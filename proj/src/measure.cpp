#include "lil/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lil/error.hpp"
#include "lil/symbol.hpp"

namespace lil {

double stable_exponent_constant(double alpha) {
  if (std::abs(alpha - 1.0) < 1e-9) return std::numbers::pi / 2.0;
  return std::tgamma(1.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0) / alpha;
}

double PowerLawScale::operator()(double alpha, double x) const {
  switch (kind) {
    case Kind::normalized: return 0.25 * alpha * (2.0 - alpha);
    case Kind::unit_stable: return 0.5 / stable_exponent_constant(alpha);
    case Kind::profile: return profile(x);
  }
  return 0.0;
}

double TabulatedMeasure::node(std::size_t j) const {
  const auto n = density_pos.size();
  if (n < 2) return y_min;
  return y_min * std::pow(y_max / y_min, static_cast<double>(j) / static_cast<double>(n - 1));
}

double TabulatedMeasure::density(double y) const {
  const double a = std::abs(y);
  if (a < y_min || a > y_max || density_pos.size() < 2) return 0.0;
  const auto& f = (y < 0.0 && !symmetric) ? density_neg : density_pos;
  const auto n = f.size();
  const double pos = std::log(a / y_min) / std::log(y_max / y_min) * static_cast<double>(n - 1);
  const auto j = std::min(static_cast<std::size_t>(pos), n - 2);
  const double w = pos - static_cast<double>(j);
  const double f0 = f[j];
  const double f1 = f[j + 1];
  if (f0 > 0.0 && f1 > 0.0) return std::exp((1.0 - w) * std::log(f0) + w * std::log(f1));
  return (1.0 - w) * f0 + w * f1;
}

bool LevyMeasureSpec::is_symmetric() const {
  if (std::holds_alternative<PowerLawMeasure>(shape)) return true;
  if (const auto* t = std::get_if<TabulatedMeasure>(&shape)) {
    return t->symmetric || t->density_pos == t->density_neg;
  }
  // Atomic: symmetric when every atom has a mirror image of equal mass.
  const auto& atoms = std::get<AtomicMeasure>(shape).atoms;
  return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) {
    return std::any_of(atoms.begin(), atoms.end(), [&](const Atom& b) {
      return b.location == -a.location && b.mass == a.mass;
    });
  });
}

bool LevyMeasureSpec::state_independent() const {
  if (const auto* p = std::get_if<PowerLawMeasure>(&shape)) {
    return p->alpha.is_constant() &&
           (p->scale.kind != PowerLawScale::Kind::profile || p->scale.profile.is_constant());
  }
  return true;
}

void LevyMeasureSpec::validate() const {
  if (!(truncation_radius > 0.0) || !std::isfinite(truncation_radius)) {
    throw Error(Errc::invalid_spec, "truncation_radius must be positive");
  }
  if (const auto* p = std::get_if<PowerLawMeasure>(&shape)) {
    const double lo = p->alpha.lower_bound();
    const double hi = p->alpha.upper_bound();
    if (!(lo > 0.0 && hi < 2.0)) {
      throw Error(Errc::invalid_spec, "power-law alpha must stay in a compact subset of (0,2)");
    }
    if (p->scale.kind == PowerLawScale::Kind::profile && !(p->scale.profile.lower_bound() > 0.0)) {
      throw Error(Errc::invalid_spec, "power-law intensity c(x) must be positive");
    }
    return;
  }
  if (const auto* a = std::get_if<AtomicMeasure>(&shape)) {
    for (const auto& atom : a->atoms) {
      if (atom.location == 0.0 || !std::isfinite(atom.location)) {
        throw Error(Errc::invalid_spec, "atom locations must be finite and nonzero");
      }
      if (!(atom.mass > 0.0) || !std::isfinite(atom.mass)) {
        throw Error(Errc::invalid_spec, "atom masses must be positive");
      }
    }
    return;
  }
  const auto& t = std::get<TabulatedMeasure>(shape);
  if (!(t.y_min > 0.0 && t.y_max > t.y_min)) {
    throw Error(Errc::invalid_spec, "tabulated grid needs 0 < y_min < y_max");
  }
  if (t.density_pos.size() < 2) throw Error(Errc::invalid_spec, "tabulated density needs >= 2 nodes");
  if (!t.symmetric && t.density_neg.size() != t.density_pos.size()) {
    throw Error(Errc::invalid_spec, "asymmetric tabulated density needs a negative branch of equal size");
  }
  auto bad = [](double v) { return !(v >= 0.0) || !std::isfinite(v); };
  if (std::any_of(t.density_pos.begin(), t.density_pos.end(), bad) ||
      (!t.symmetric && std::any_of(t.density_neg.begin(), t.density_neg.end(), bad))) {
    throw Error(Errc::invalid_spec, "tabulated density must be finite and nonnegative");
  }
}

double LevyMeasureSpec::levy_integral(double x) const {
  return eval_pU(*this, x, 1.0, PUMethod::quadrature);
}

LevyMeasureSpec power_law(Profile alpha, PowerLawScale scale, double truncation_radius) {
  LevyMeasureSpec m{PowerLawMeasure{alpha, std::move(scale)}, truncation_radius};
  m.validate();
  return m;
}

LevyMeasureSpec atomic(std::vector<Atom> atoms) {
  LevyMeasureSpec m{AtomicMeasure{std::move(atoms)}, 1.0};
  m.validate();
  return m;
}

LevyMeasureSpec tabulated(TabulatedMeasure table, double truncation_radius) {
  LevyMeasureSpec m{std::move(table), truncation_radius};
  m.validate();
  return m;
}

LevyMeasureSpec unit_stable(double alpha) {
  return power_law(Profile::constant(alpha), PowerLawScale{PowerLawScale::Kind::unit_stable, {}});
}

LevyTriplet::LevyTriplet(Profile drift, LevyMeasureSpec measure, double gaussian_variance)
    : drift_(drift), measure_(std::move(measure)) {
  if (gaussian_variance != 0.0) {
    throw Error(Errc::invalid_spec, "Levy triplet must have no Gaussian part");
  }
  measure_.validate();
}

}  // namespace lil
