#include "lil/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace lil {

double compensated_sum(std::span<const double> values) {
  double s = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  return s + c;
}

namespace {

template <class Pred>
std::size_t count_paths(const PathEnsemble& ens, Exec exec, Pred pred) {
  const auto n = static_cast<std::int64_t>(ens.size());
  std::int64_t hits = 0;
  if (exec == Exec::parallel) {
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) hits += pred(static_cast<std::size_t>(i)) ? 1 : 0;
  } else {
    for (std::int64_t i = 0; i < n; ++i) hits += pred(static_cast<std::size_t>(i)) ? 1 : 0;
  }
  return static_cast<std::size_t>(hits);
}

template <class F>
void for_each_path(std::size_t n, Exec exec, F f) {
  const auto m = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
  }
}

}  // namespace

ComplexMean charfn_mean(const PathEnsemble& ens, std::size_t record, double xi, Exec exec) {
  const std::size_t n = ens.size();
  std::vector<double> re(n);
  std::vector<double> im(n);
  const double x0 = ens.x0();
  for_each_path(n, exec, [&](std::size_t i) {
    const double phase = xi * (ens.position(i, record) - x0);
    re[i] = std::cos(phase);
    im[i] = std::sin(phase);
  });
  const double inv = 1.0 / static_cast<double>(n);
  return {compensated_sum(re) * inv, compensated_sum(im) * inv};
}

std::size_t count_sup_at_least(const PathEnsemble& ens, std::size_t record, double radius, Exec exec) {
  return count_paths(ens, exec, [&](std::size_t i) { return ens.sup(i, record) >= radius; });
}

std::size_t count_sup_at_most(const PathEnsemble& ens, std::size_t record, double radius, Exec exec) {
  return count_paths(ens, exec, [&](std::size_t i) { return ens.sup(i, record) <= radius; });
}

std::size_t count_displacement_at_least(const PathEnsemble& ens, std::size_t record, double level, Exec exec) {
  const double x0 = ens.x0();
  return count_paths(ens, exec, [&](std::size_t i) { return std::abs(ens.position(i, record) - x0) >= level; });
}

std::size_t count_position_below(const PathEnsemble& ens, std::size_t record, double level, Exec exec) {
  return count_paths(ens, exec, [&](std::size_t i) { return ens.position(i, record) < level; });
}

std::vector<double> min_sup_ratio(const PathEnsemble& ens, std::span<const std::size_t> records,
                                  std::span<const double> denominators, Exec exec) {
  std::vector<double> out(ens.size());
  for_each_path(ens.size(), exec, [&](std::size_t i) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < records.size(); ++k) m = std::min(m, ens.sup(i, records[k]) / denominators[k]);
    out[i] = m;
  });
  return out;
}

std::vector<double> max_exit_ratio(const PathEnsemble& ens, std::span<const double> radii,
                                   std::span<const double> scales, Exec exec) {
  std::vector<double> out(ens.size());
  const auto& times = ens.record_times();
  for_each_path(ens.size(), exec, [&](std::size_t i) {
    const auto sups = ens.sups_of(i);
    double m = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const auto it = std::lower_bound(sups.begin(), sups.end(), radii[k]);
      if (it == sups.end()) {
        m = std::numeric_limits<double>::infinity();
        break;
      }
      m = std::max(m, times[static_cast<std::size_t>(it - sups.begin())] / scales[k]);
    }
    out[i] = m;
  });
  return out;
}

}  // namespace lil
