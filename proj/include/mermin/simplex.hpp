#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mermin {

/// Downhill simplex (Nelder-Mead) minimizer over an unconstrained real
/// vector. Derivative-free; standard reflect/expand/contract/shrink moves.
struct SimplexOptions {
  /// Soft cap: no iteration starts past it, so the total may overshoot by at
  /// most one iteration (n + 2 evaluations).
  int max_evaluations = 4000;
  /// Stop when the spread of vertex values falls below this.
  double tolerance = 1e-10;
  /// Offset added to each coordinate to build the initial simplex.
  double initial_step = 0.5;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  /// Best value after each accepted move; nonincreasing by construction.
  std::vector<double> accepted;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

SimplexResult minimize_simplex(const ObjectiveFn& f, std::span<const double> start,
                               const SimplexOptions& options);

}  // namespace mermin
