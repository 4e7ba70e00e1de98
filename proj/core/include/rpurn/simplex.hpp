#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rpurn {

struct SimplexOptions {
  /// Stop once the spread of objective values over the simplex is below this.
  double f_tolerance = 1e-6;
  /// ...and every vertex lies within this distance (per coordinate, as a
  /// fraction of the box width) of the best vertex.
  double x_tolerance = 1e-8;
  int max_evaluations = 4000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead maximization inside the box [lower, upper]. Trial points are
/// projected onto the box. The start point is always a vertex, so the result
/// is never worse than f(start).
SimplexResult maximize_in_box(const std::function<double(std::span<const double>)>& objective,
                              std::vector<double> start, std::span<const double> lower,
                              std::span<const double> upper, std::span<const double> step,
                              const SimplexOptions& options = {});

}  // namespace rpurn
