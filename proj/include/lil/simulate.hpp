#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lil/measure.hpp"
#include "lil/rng.hpp"

namespace lil {

/// Strictly increasing observation times in (0, t_max].
///   uniform:   t_k = k t_max / steps, k = 1..steps (steps a power of two)
///   geometric: the first point t_max 2^{-levels}, then `points_per_level`
///              equal steps inside every dyadic level up to t_max
class PathGrid {
 public:
  enum class Layout { uniform, geometric };

  static PathGrid uniform(double t_max, std::size_t steps);
  static PathGrid geometric(double t_max, std::size_t levels, std::size_t points_per_level);

  Layout layout() const { return layout_; }
  double t_max() const { return t_max_; }
  std::size_t steps() const { return steps_; }
  std::size_t levels() const { return levels_; }
  std::size_t points_per_level() const { return per_level_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }

  /// Index of the grid time equal to t within relative tolerance.
  std::optional<std::size_t> index_of(double t, double rel_tol = 1e-9) const;

 private:
  PathGrid() = default;
  Layout layout_ = Layout::uniform;
  double t_max_ = 1.0;
  std::size_t steps_ = 0;
  std::size_t levels_ = 0;
  std::size_t per_level_ = 0;
  std::vector<double> times_;
};

/// levy:        state-independent triplet; increments are sampled exactly
///              (stable for power-law, compound Poisson for atomic/tabulated)
/// stable_like: power-law triplet with x-dependent alpha/c/drift; frozen-coefficient
///              Euler stepping X += h^{1/alpha(X)} (2 c K)^{1/alpha} S - l(X) h
struct ProcessSpec {
  enum class Kind { levy, stable_like };
  Kind kind = Kind::levy;
  LevyTriplet triplet;

  void validate() const;
};

ProcessSpec levy_process(LevyTriplet triplet);
ProcessSpec stable_like_process(LevyTriplet triplet);

struct SeedTag {
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
};

struct PathSample {
  double x0 = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> running_sup;  // sup_{s <= t_k} |X_s - x0| over grid points
  SeedTag seed_tag;
};

/// Chambers-Mallows-Stuck: standard symmetric alpha-stable, E e^{i xi S} = e^{-|xi|^alpha}.
double sample_symmetric_stable(double alpha, StepStream& rng);

PathSample simulate_path(const ProcessSpec& process, double x0, const PathGrid& grid, SeedTag tag);

/// First grid time with running_sup >= a, per radius; nullopt when never reached.
std::vector<std::optional<double>> path_statistics(const PathSample& sample,
                                                   const std::vector<double>& radii);

/// N paths from one spec, grid and seed. Only the grid columns listed in
/// `record_index` are stored (all columns when empty); running suprema are
/// still taken over the full grid.
class PathEnsemble {
 public:
  PathEnsemble(ProcessSpec process, double x0, PathGrid grid, std::uint64_t master_seed,
               std::vector<std::size_t> record_index, std::size_t paths);

  std::size_t size() const { return paths_; }
  std::size_t records() const { return record_index_.size(); }
  const ProcessSpec& process() const { return process_; }
  double x0() const { return x0_; }
  const PathGrid& grid() const { return grid_; }
  std::uint64_t master_seed() const { return seed_; }
  const std::vector<std::size_t>& record_index() const { return record_index_; }
  const std::vector<double>& record_times() const { return record_times_; }

  double position(std::size_t path, std::size_t record) const { return positions_[path * records() + record]; }
  double sup(std::size_t path, std::size_t record) const { return sups_[path * records() + record]; }
  std::span<double> positions_of(std::size_t path) { return {positions_.data() + path * records(), records()}; }
  std::span<double> sups_of(std::size_t path) { return {sups_.data() + path * records(), records()}; }
  std::span<const double> positions_of(std::size_t path) const { return {positions_.data() + path * records(), records()}; }
  std::span<const double> sups_of(std::size_t path) const { return {sups_.data() + path * records(), records()}; }

  /// Record column for time t; throws Error(window_outside_grid) if absent.
  std::size_t record_of(double t) const;
  std::optional<std::size_t> find_record(double t) const;

  /// Recorded view of one path as a PathSample.
  PathSample path(std::size_t index) const;

  bool operator==(const PathEnsemble& other) const {
    return positions_ == other.positions_ && sups_ == other.sups_ &&
           record_times_ == other.record_times_ && seed_ == other.seed_;
  }

 private:
  ProcessSpec process_;
  double x0_;
  PathGrid grid_;
  std::uint64_t seed_;
  std::vector<std::size_t> record_index_;
  std::vector<double> record_times_;
  std::size_t paths_;
  std::vector<double> positions_;
  std::vector<double> sups_;
};

struct EnsembleRequest {
  ProcessSpec process;
  double x0 = 0.0;
  PathGrid grid;
  std::uint64_t master_seed = 0;
  std::size_t paths = 0;
  std::vector<std::size_t> record_index;  // empty = every grid column
};

/// Record columns for the given times; each must be a grid time.
std::vector<std::size_t> record_indices_for(const PathGrid& grid, const std::vector<double>& times);

/// OpenMP-parallel over paths. Output is bit-identical to the serial reference.
PathEnsemble simulate_ensemble(const EnsembleRequest& request);

/// Single-threaded reference implementation.
PathEnsemble simulate_ensemble_serial(const EnsembleRequest& request);

}  // namespace lil
