#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mermin/bell.hpp"
#include "mermin/stateclasses.hpp"

namespace mermin {

struct OptimizationConfig {
  int restarts = 64;
  /// Objective-evaluation budget per restart.
  int max_iterations = 2000;
  /// Convergence tolerance on the objective value.
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
  /// Search the six Bloch vectors jointly with the state. Only meaningful for
  /// the sigma functional; the Mermin operator pins the settings to the
  /// x and y axes.
  bool optimize_settings = false;
  /// Worker threads across restarts; 0 picks the hardware default. The result
  /// does not depend on the thread count.
  int threads = 0;
  /// Called on roughly 1% of objective evaluations with the candidate state
  /// parameters. May be called concurrently from worker threads.
  std::function<void(const ClassParameters&)> inspect;
};

struct OptimizationResult {
  double best_value = 0.0;
  ClassParameters best_params;
  MeasurementSettings best_settings = MeasurementSettings::mermin_axes();
  std::vector<double> restart_values;
  long iterations_used = 0;
  int best_restart = -1;
};

/// Maximize |<B>| over pure states of the class (and over settings when
/// enabled) by multi-start Nelder-Mead. Restart k derives its stream from
/// child_seed(cfg.seed, k); identical seeds give identical results. The best
/// value is a lower bound on the true class maximum.
OptimizationResult maximize(Partition partition, BellKind functional,
                            const OptimizationConfig& cfg);

struct BoundCertificate {
  double claimed_bound = 0.0;
  double achieved = 0.0;
  double gap = 0.0;  // claimed_bound - achieved
  /// Set only if the search exceeded the claimed bound by more than 1e-6.
  bool violation = false;
  ClassParameters witness_params;
  MeasurementSettings witness_settings = MeasurementSettings::mermin_axes();
};

BoundCertificate certify_bound(Partition partition, BellKind functional,
                               double claimed_bound, const OptimizationConfig& cfg);

}  // namespace mermin
