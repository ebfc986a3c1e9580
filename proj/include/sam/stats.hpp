#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "sam/errors.hpp"

namespace sam::stats {

struct CorrelationReport {
  std::string metric_name;
  double pearson_r = 0.0;
  double abs_pearson = 0.0;
  double kendall_tau = 0.0;
  std::size_t n_segments = 0;
};

namespace detail {

inline void check_sizes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionError("sequences differ in length: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) throw DimensionError("need at least 2 observations");
}

}  // namespace detail

/// Sample Pearson correlation, two-pass (mean first, then centred sums).
inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_sizes(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateInputError("pearson: constant sequence");
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

/// Kendall tau-b over all pairs, O(n^2).
inline double kendall_tau(std::span<const double> x, std::span<const double> y) {
  detail::check_sizes(x, y);
  std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0) ++ties_x;
      if (dy == 0.0) ++ties_y;
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const auto n = static_cast<std::int64_t>(x.size());
  const std::int64_t pairs = n * (n - 1) / 2;
  if (ties_x == pairs || ties_y == pairs) {
    throw DegenerateInputError("kendall: all values tied");
  }
  const double denom =
      std::sqrt(static_cast<double>(pairs - ties_x) * static_cast<double>(pairs - ties_y));
  return std::clamp(static_cast<double>(concordant - discordant) / denom, -1.0, 1.0);
}

inline CorrelationReport correlate(std::string metric_name, std::span<const double> scores,
                                   std::span<const double> human) {
  CorrelationReport r;
  r.metric_name = std::move(metric_name);
  r.pearson_r = pearson(scores, human);
  r.abs_pearson = std::abs(r.pearson_r);
  r.kendall_tau = kendall_tau(scores, human);
  r.n_segments = scores.size();
  return r;
}

}  // namespace sam::stats
