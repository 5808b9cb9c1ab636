#include "lil/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "lil/error.hpp"

namespace lil {

namespace {

constexpr std::size_t kMaxSteps = std::size_t{1} << 40;

bool power_of_two(std::size_t n) { return n > 0 && std::has_single_bit(n); }

}  // namespace

PathGrid PathGrid::uniform(double t_max, std::size_t steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(Errc::invalid_spec, "grid t_max must be positive");
  if (!power_of_two(steps)) throw Error(Errc::invalid_spec, "grid steps must be a power of two");
  if (steps > kMaxSteps) throw Error(Errc::invalid_spec, "step count overflow");
  PathGrid g;
  g.layout_ = Layout::uniform;
  g.t_max_ = t_max;
  g.steps_ = steps;
  g.times_.resize(steps);
  const double n = static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) g.times_[k] = t_max * (static_cast<double>(k + 1) / n);
  g.times_.back() = t_max;
  return g;
}

PathGrid PathGrid::geometric(double t_max, std::size_t levels, std::size_t points_per_level) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(Errc::invalid_spec, "grid t_max must be positive");
  if (levels == 0 || levels > 1000) throw Error(Errc::invalid_spec, "grid levels must be in [1, 1000]");
  if (!power_of_two(points_per_level)) {
    throw Error(Errc::invalid_spec, "points_per_level must be a power of two");
  }
  if (levels * points_per_level > kMaxSteps) throw Error(Errc::invalid_spec, "step count overflow");
  PathGrid g;
  g.layout_ = Layout::geometric;
  g.t_max_ = t_max;
  g.levels_ = levels;
  g.per_level_ = points_per_level;
  g.steps_ = levels * points_per_level + 1;
  g.times_.reserve(g.steps_);
  g.times_.push_back(std::ldexp(t_max, -static_cast<int>(levels)));
  const double ppl = static_cast<double>(points_per_level);
  for (std::size_t l = levels; l-- > 0;) {
    const double lo = std::ldexp(t_max, -static_cast<int>(l) - 1);
    const double hi = std::ldexp(t_max, -static_cast<int>(l));
    for (std::size_t j = 1; j < points_per_level; ++j) {
      g.times_.push_back(lo + (hi - lo) * (static_cast<double>(j) / ppl));
    }
    g.times_.push_back(hi);
  }
  return g;
}

std::optional<std::size_t> PathGrid::index_of(double t, double rel_tol) const {
  const auto it = std::lower_bound(times_.begin(), times_.end(), t * (1.0 - rel_tol));
  if (it == times_.end()) return std::nullopt;
  if (std::abs(*it - t) > rel_tol * std::abs(t)) return std::nullopt;
  return static_cast<std::size_t>(it - times_.begin());
}

void ProcessSpec::validate() const {
  triplet.measure().validate();
  if (kind == Kind::levy) {
    if (!triplet.state_independent()) {
      throw Error(Errc::invalid_spec, "levy process needs state-independent drift and measure");
    }
    if (const auto* pl = std::get_if<PowerLawMeasure>(&triplet.measure().shape)) {
      const double a = pl->alpha_at(0.0);
      if (!(a > 0.0 && a < 2.0)) throw Error(Errc::invalid_spec, "alpha must lie in (0, 2)");
    }
    return;
  }
  const auto* pl = std::get_if<PowerLawMeasure>(&triplet.measure().shape);
  if (pl == nullptr) throw Error(Errc::invalid_spec, "stable-like process needs a power-law measure");
  const double lo = pl->alpha.lower_bound();
  const double hi = pl->alpha.upper_bound();
  if (!(lo > 0.0 && hi < 2.0)) throw Error(Errc::invalid_spec, "alpha(x) must stay inside (0, 2)");
}

ProcessSpec levy_process(LevyTriplet triplet) {
  ProcessSpec s{ProcessSpec::Kind::levy, std::move(triplet)};
  s.validate();
  return s;
}

ProcessSpec stable_like_process(LevyTriplet triplet) {
  ProcessSpec s{ProcessSpec::Kind::stable_like, std::move(triplet)};
  s.validate();
  return s;
}

double sample_symmetric_stable(double alpha, StepStream& rng) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw Error(Errc::domain_error, "stable index must lie in (0, 2)");
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  const double w = -std::log(rng.uniform());
  if (alpha == 1.0) return std::tan(v);
  const double inv = 1.0 / alpha;
  const double k = (1.0 - alpha) * inv;
  return std::sin(alpha * v) * std::exp(-inv * std::log(std::cos(v)) + k * std::log(std::cos((1.0 - alpha) * v) / w));
}

namespace {

// Constant-index stable increments.
struct StableStep {
  double alpha;
  double inv_alpha;
  double k;
  double scale;  // (2 c K(alpha))^{1/alpha}
  double drift;
  std::vector<double> step_scale;  // scale h_k^{1/alpha}, cached per grid step

  double draw(StepStream& rng) const {
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    const double w = -std::log(rng.uniform());
    if (alpha == 1.0) return std::tan(v);
    return std::sin(alpha * v) * std::exp(-inv_alpha * std::log(std::cos(v)) + k * std::log(std::cos((1.0 - alpha) * v) / w));
  }

  double step(std::size_t k, double, double h, StepStream& rng) const {
    return step_scale[k] * draw(rng) - drift * h;
  }
};

// Compound Poisson increments with a linear compensator.
struct PoissonStep {
  double rate = 0.0;
  double drift = 0.0;                 // -(l + compensator)
  std::vector<double> atom_location;  // atomic jumps
  std::vector<double> atom_cdf;
  std::vector<double> grid;           // tabulated |y| nodes
  std::vector<double> grid_cdf;
  std::vector<double> p_positive;

  static std::uint64_t poisson(double mu, StepStream& rng) {
    if (mu <= 0.0) return 0;
    if (mu < 30.0) {
      const double u = rng.uniform();
      double p = std::exp(-mu);
      double f = p;
      std::uint64_t k = 0;
      while (u > f && k < 1000) {
        ++k;
        p *= mu / static_cast<double>(k);
        f += p;
      }
      return k;
    }
    std::poisson_distribution<std::uint64_t> d(mu);
    return d(rng);
  }

  double jump(StepStream& rng) const {
    const double u = rng.uniform();
    if (!atom_location.empty()) {
      const auto it = std::upper_bound(atom_cdf.begin(), atom_cdf.end(), u);
      const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - atom_cdf.begin()), atom_location.size() - 1);
      return atom_location[j];
    }
    const auto it = std::upper_bound(grid_cdf.begin(), grid_cdf.end(), u);
    std::size_t j = static_cast<std::size_t>(it - grid_cdf.begin());
    j = std::clamp<std::size_t>(j, 1, grid.size() - 1);
    const double c0 = grid_cdf[j - 1];
    const double c1 = grid_cdf[j];
    const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
    const double y = grid[j - 1] + w * (grid[j] - grid[j - 1]);
    const double pp = p_positive[j - 1] + w * (p_positive[j] - p_positive[j - 1]);
    return rng.uniform() < pp ? y : -y;
  }

  double step(std::size_t, double, double h, StepStream& rng) const {
    const std::uint64_t n = poisson(rate * h, rng);
    double s = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) s += jump(rng);
    return s + drift * h;
  }
};

// Frozen-coefficient Euler step for x-dependent alpha, c and drift.
struct StableLikeStep {
  const PowerLawMeasure* measure;
  const Profile* drift;

  double step(std::size_t, double x, double h, StepStream& rng) const {
    const double alpha = measure->alpha_at(x);
    const double c = measure->c_at(x);
    const double scale = std::pow(2.0 * c * stable_exponent_constant(alpha) * h, 1.0 / alpha);
    return scale * sample_symmetric_stable(alpha, rng) - (*drift)(x)*h;
  }
};

using Stepper = std::variant<StableStep, PoissonStep, StableLikeStep>;

PoissonStep make_atomic(const AtomicMeasure& m, double l) {
  PoissonStep s;
  double comp = 0.0;
  for (const auto& a : m.atoms) {
    if (a.mass <= 0.0) continue;
    s.rate += a.mass;
    s.atom_location.push_back(a.location);
    s.atom_cdf.push_back(s.rate);
    if (std::abs(a.location) <= 1.0) comp += a.location * a.mass;
  }
  for (double& c : s.atom_cdf) c /= s.rate;
  s.drift = -(l + comp);
  return s;
}

PoissonStep make_tabulated(const TabulatedMeasure& t, double truncation, double l) {
  PoissonStep s;
  const double top = std::min(t.y_max, truncation);
  constexpr std::size_t n = 4097;
  s.grid.resize(n);
  s.grid_cdf.resize(n);
  s.p_positive.resize(n);
  std::vector<double> total(n);
  double comp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double y = t.y_min * std::pow(top / t.y_min, static_cast<double>(j) / (n - 1));
    const double fp = t.density(y);
    const double fm = t.density(-y);
    s.grid[j] = y;
    total[j] = fp + fm;
    s.p_positive[j] = total[j] > 0.0 ? fp / total[j] : 0.5;
  }
  s.grid_cdf[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double dy = s.grid[j] - s.grid[j - 1];
    s.grid_cdf[j] = s.grid_cdf[j - 1] + 0.5 * dy * (total[j] + total[j - 1]);
    if (s.grid[j] <= 1.0) {
      const auto diff = [&](std::size_t i) { return s.grid[i] * total[i] * (2.0 * s.p_positive[i] - 1.0); };
      comp += 0.5 * dy * (diff(j) + diff(j - 1));
    }
  }
  s.rate = s.grid_cdf.back();
  if (s.rate > 0.0) {
    for (double& c : s.grid_cdf) c /= s.rate;
  }
  s.drift = -(l + comp);
  return s;
}

Stepper make_stepper(const ProcessSpec& p, const std::vector<double>& times) {
  const LevyTriplet& tr = p.triplet;
  const LevyMeasureSpec& m = tr.measure();
  if (p.kind == ProcessSpec::Kind::stable_like) {
    return StableLikeStep{&std::get<PowerLawMeasure>(m.shape), &tr.drift()};
  }
  const double l = tr.drift()(0.0);
  if (const auto* pl = std::get_if<PowerLawMeasure>(&m.shape)) {
    const double alpha = pl->alpha_at(0.0);
    const double c = pl->c_at(0.0);
    StableStep s{alpha, 1.0 / alpha, (1.0 - alpha) / alpha,
                 std::pow(2.0 * c * stable_exponent_constant(alpha), 1.0 / alpha), l, {}};
    s.step_scale.resize(times.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      s.step_scale[k] = s.scale * std::pow(times[k] - prev, s.inv_alpha);
      prev = times[k];
    }
    return s;
  }
  if (const auto* at = std::get_if<AtomicMeasure>(&m.shape)) return make_atomic(*at, l);
  return make_tabulated(std::get<TabulatedMeasure>(m.shape), m.truncation_radius, l);
}

// One path; writes the recorded columns of position and running sup.
void run_path(const Stepper& stepper, double x0, const std::vector<double>& times, std::uint64_t seed,
              std::uint64_t path, const std::vector<std::size_t>& record, double* pos, double* sup) {
  std::visit(
      [&](const auto& st) {
        double x = x0;
        double s = 0.0;
        double prev = 0.0;
        std::size_t r = 0;
        for (std::size_t k = 0; k < times.size() && r < record.size(); ++k) {
          StepStream rng(seed, path, k);
          x += st.step(k, x, times[k] - prev, rng);
          prev = times[k];
          s = std::max(s, std::abs(x - x0));
          if (record[r] == k) {
            pos[r] = x;
            sup[r] = s;
            ++r;
          }
        }
      },
      stepper);
}

std::vector<std::size_t> all_columns(const PathGrid& grid) {
  std::vector<std::size_t> idx(grid.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  return idx;
}

}  // namespace

PathSample simulate_path(const ProcessSpec& process, double x0, const PathGrid& grid, SeedTag tag) {
  process.validate();
  const Stepper stepper = make_stepper(process, grid.times());
  PathSample out;
  out.x0 = x0;
  out.times = grid.times();
  out.positions.resize(grid.size());
  out.running_sup.resize(grid.size());
  out.seed_tag = tag;
  run_path(stepper, x0, grid.times(), tag.master_seed, tag.path_index, all_columns(grid), out.positions.data(),
           out.running_sup.data());
  return out;
}

std::vector<std::optional<double>> path_statistics(const PathSample& sample, const std::vector<double>& radii) {
  std::vector<std::optional<double>> out;
  out.reserve(radii.size());
  for (double a : radii) {
    const auto it = std::lower_bound(sample.running_sup.begin(), sample.running_sup.end(), a);
    if (it == sample.running_sup.end()) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(sample.times[static_cast<std::size_t>(it - sample.running_sup.begin())]);
    }
  }
  return out;
}

PathEnsemble::PathEnsemble(ProcessSpec process, double x0, PathGrid grid, std::uint64_t master_seed,
                           std::vector<std::size_t> record_index, std::size_t paths)
    : process_(std::move(process)),
      x0_(x0),
      grid_(std::move(grid)),
      seed_(master_seed),
      record_index_(std::move(record_index)),
      paths_(paths) {
  if (record_index_.empty()) record_index_ = all_columns(grid_);
  if (!std::is_sorted(record_index_.begin(), record_index_.end()) ||
      std::adjacent_find(record_index_.begin(), record_index_.end()) != record_index_.end() ||
      record_index_.back() >= grid_.size()) {
    throw Error(Errc::precondition, "record columns must be distinct, sorted grid indices");
  }
  record_times_.reserve(record_index_.size());
  for (auto k : record_index_) record_times_.push_back(grid_.times()[k]);
  positions_.assign(paths_ * record_index_.size(), 0.0);
  sups_.assign(paths_ * record_index_.size(), 0.0);
}

std::optional<std::size_t> PathEnsemble::find_record(double t) const {
  const double tol = 1e-9;
  const auto it = std::lower_bound(record_times_.begin(), record_times_.end(), t * (1.0 - tol));
  if (it == record_times_.end() || std::abs(*it - t) > tol * std::abs(t)) return std::nullopt;
  return static_cast<std::size_t>(it - record_times_.begin());
}

std::size_t PathEnsemble::record_of(double t) const {
  const auto r = find_record(t);
  if (!r) throw Error(Errc::window_outside_grid, "time " + std::to_string(t) + " is not a recorded grid time");
  return *r;
}

PathSample PathEnsemble::path(std::size_t index) const {
  if (index >= paths_) throw Error(Errc::precondition, "path index out of range");
  PathSample s;
  s.x0 = x0_;
  s.times = record_times_;
  const auto p = positions_of(index);
  const auto q = sups_of(index);
  s.positions.assign(p.begin(), p.end());
  s.running_sup.assign(q.begin(), q.end());
  s.seed_tag = {seed_, index};
  return s;
}

std::vector<std::size_t> record_indices_for(const PathGrid& grid, const std::vector<double>& times) {
  std::vector<std::size_t> idx;
  idx.reserve(times.size());
  for (double t : times) {
    const auto k = grid.index_of(t);
    if (!k) throw Error(Errc::window_outside_grid, "time " + std::to_string(t) + " is not on the grid");
    idx.push_back(*k);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

namespace {

PathEnsemble prepare(const EnsembleRequest& req) {
  req.process.validate();
  if (req.paths == 0) throw Error(Errc::empty_ensemble, "ensemble needs at least one path");
  return PathEnsemble(req.process, req.x0, req.grid, req.master_seed, req.record_index, req.paths);
}

}  // namespace

PathEnsemble simulate_ensemble(const EnsembleRequest& req) {
  PathEnsemble ens = prepare(req);
  const Stepper stepper = make_stepper(req.process, req.grid.times());
  const auto& times = ens.grid().times();
  const auto& record = ens.record_index();
  const auto n = static_cast<std::int64_t>(ens.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = static_cast<std::size_t>(i);
    run_path(stepper, ens.x0(), times, ens.master_seed(), p, record, ens.positions_of(p).data(),
             ens.sups_of(p).data());
  }
  return ens;
}

PathEnsemble simulate_ensemble_serial(const EnsembleRequest& req) {
  PathEnsemble ens = prepare(req);
  const Stepper stepper = make_stepper(req.process, req.grid.times());
  const auto& times = ens.grid().times();
  const auto& record = ens.record_index();
  for (std::size_t p = 0; p < ens.size(); ++p) {
    run_path(stepper, ens.x0(), times, ens.master_seed(), p, record, ens.positions_of(p).data(),
             ens.sups_of(p).data());
  }
  return ens;
}

}  // namespace lil
