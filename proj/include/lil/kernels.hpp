#pragma once

#include <span>
#include <vector>

#include "lil/simulate.hpp"

namespace lil {

/// Parallel kernels run per-path work under OpenMP; reductions always sum in
/// path order so both modes give bit-identical results.
enum class Exec { serial, parallel };

/// Neumaier compensated sum in index order.
double compensated_sum(std::span<const double> values);

struct ComplexMean {
  double re = 0.0;
  double im = 0.0;
};

/// Ensemble mean of exp(i xi (X_t - x0)) at one record column.
ComplexMean charfn_mean(const PathEnsemble& ens, std::size_t record, double xi, Exec exec = Exec::parallel);

/// Number of paths with running_sup >= radius at the record column.
std::size_t count_sup_at_least(const PathEnsemble& ens, std::size_t record, double radius,
                               Exec exec = Exec::parallel);

/// Number of paths with running_sup <= radius at the record column.
std::size_t count_sup_at_most(const PathEnsemble& ens, std::size_t record, double radius,
                              Exec exec = Exec::parallel);

/// Number of paths with |X_t - x0| >= level.
std::size_t count_displacement_at_least(const PathEnsemble& ens, std::size_t record, double level,
                                        Exec exec = Exec::parallel);

/// Number of paths with X_t < level.
std::size_t count_position_below(const PathEnsemble& ens, std::size_t record, double level,
                                 Exec exec = Exec::parallel);

/// Per path: min over the given columns of running_sup / denominator.
std::vector<double> min_sup_ratio(const PathEnsemble& ens, std::span<const std::size_t> records,
                                  std::span<const double> denominators, Exec exec = Exec::parallel);

/// Per path: max over radii of (first recorded time with running_sup >= a) / scale;
/// +inf when a radius is never reached.
std::vector<double> max_exit_ratio(const PathEnsemble& ens, std::span<const double> radii,
                                   std::span<const double> scales, Exec exec = Exec::parallel);

}  // namespace lil
