#include "mermin/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "mermin/rng.hpp"
#include "mermin/simplex.hpp"

namespace mermin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSettingsParams = 12;  // (theta, phi) for each of a, a', b, b', c, c'

MeasurementSettings settings_from_angles(std::span<const double> v) {
  auto obs = [&](int i) { return Observable::from_angles(v[2 * i], v[2 * i + 1]); };
  return MeasurementSettings{obs(0), obs(1), obs(2), obs(3), obs(4), obs(5)};
}

struct RestartOutcome {
  double value = 0.0;  // |<B>| at the returned point
  std::vector<double> x;
  long evaluations = 0;
};

struct Search {
  Partition partition;
  BellKind functional;
  bool free_settings;
  std::size_t n_state;
  const OptimizationConfig* cfg;
  const BellOperator* fixed_op;  // set when the settings are pinned

  double abs_bell(std::span<const double> x, long& count) const {
    ++count;
    ClassParameters p{partition,
                      std::vector<double>(x.begin(), x.begin() + n_state)};
    if (cfg->inspect && count % 100 == 0) cfg->inspect(p);
    std::optional<PureState> state;
    try {
      state.emplace(decode(p));
    } catch (const std::invalid_argument&) {
      return 0.0;  // the null point of the projective parameterization
    }
    if (free_settings) {
      const BellOperator op = build_sigma(settings_from_angles(x.subspan(n_state)));
      return std::abs(bell_value(*state, op));
    }
    return std::abs(bell_value(*state, *fixed_op));
  }

  RestartOutcome run_restart(int k) const {
    const std::uint64_t seed_k = child_seed(cfg->seed, static_cast<std::uint64_t>(k));
    ClassParameters init = sample(partition, seed_k);
    std::vector<double> x = std::move(init.params);
    if (free_settings) {
      Rng srng(child_seed(seed_k, 101));
      for (int i = 0; i < 6; ++i) {
        x.push_back(std::acos(1.0 - 2.0 * srng.uniform()));
        x.push_back(2.0 * kPi * srng.uniform());
      }
    }

    long count = 0;
    const ObjectiveFn f = [this, &count](std::span<const double> v) {
      return -abs_bell(v, count);
    };

    const int n = static_cast<int>(x.size());
    RestartOutcome out;
    out.x = x;
    out.value = abs_bell(x, count);

    // Repeated simplex rounds from the incumbent, shrinking the initial step;
    // polishes the local optimum well past the single-round accuracy.
    double step = 0.6;
    int rounds = 0;
    while (true) {
      const int remaining = cfg->max_iterations - static_cast<int>(count);
      if (remaining < n + 2 || step < 1e-7) break;
      SimplexOptions so;
      so.max_evaluations = remaining;
      so.tolerance = cfg->tolerance;
      so.initial_step = step;
      SimplexResult r = minimize_simplex(f, out.x, so);
      const double improved = -r.value - out.value;
      if (-r.value > out.value) {
        out.value = -r.value;
        out.x = r.x;
      }
      ++rounds;
      step *= 0.2;
      if (rounds >= 2 && improved <= cfg->tolerance) break;
    }
    out.evaluations = count;
    return out;
  }
};

}  // namespace

OptimizationResult maximize(Partition partition, BellKind functional,
                            const OptimizationConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("maximize: restarts must be >= 1");
  if (cfg.tolerance <= 0.0) throw std::invalid_argument("maximize: tolerance must be > 0");
  const std::size_t n_state = param_count(partition);
  const bool free_settings =
      cfg.optimize_settings && functional == BellKind::sigma_general;
  const std::size_t n = n_state + (free_settings ? kSettingsParams : 0);
  if (static_cast<std::size_t>(cfg.max_iterations) < n + 2)
    throw std::invalid_argument("maximize: max_iterations must be at least " +
                                std::to_string(n + 2));

  // Pinned settings build the operator once. build_sigma with the axis
  // settings equals the Mermin operator but keeps the declared kind honest.
  const BellOperator pinned = functional == BellKind::mermin_fixed
                                  ? build_mermin()
                                  : build_sigma(MeasurementSettings::mermin_axes());

  Search search{partition, functional, free_settings, n_state, &cfg, &pinned};

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int nthreads = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw);
  nthreads = std::min(nthreads, cfg.restarts);
  nthreads = std::min(nthreads, 16);

  if (nthreads <= 1) {
    for (int k = 0; k < cfg.restarts; ++k) outcomes[k] = search.run_restart(k);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int k = next.fetch_add(1); k < cfg.restarts; k = next.fetch_add(1))
        outcomes[k] = search.run_restart(k);
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  OptimizationResult result;
  result.restart_values.reserve(cfg.restarts);
  long total = 0;
  for (int k = 0; k < cfg.restarts; ++k) {
    result.restart_values.push_back(outcomes[k].value);
    total += outcomes[k].evaluations;
    if (outcomes[k].value > result.best_value || result.best_restart < 0) {
      result.best_value = outcomes[k].value;
      result.best_restart = k;
    }
  }
  result.iterations_used = total;

  const std::vector<double>& bx = outcomes[result.best_restart].x;
  result.best_params =
      ClassParameters{partition, std::vector<double>(bx.begin(), bx.begin() + n_state)};
  result.best_settings = free_settings
                             ? settings_from_angles(std::span<const double>(bx).subspan(n_state))
                             : pinned.settings;
  return result;
}

BoundCertificate certify_bound(Partition partition, BellKind functional,
                               double claimed_bound, const OptimizationConfig& cfg) {
  if (claimed_bound <= 0.0)
    throw std::invalid_argument("certify_bound: claimed bound must be positive");
  const OptimizationResult res = maximize(partition, functional, cfg);
  BoundCertificate cert;
  cert.claimed_bound = claimed_bound;
  cert.achieved = res.best_value;
  cert.gap = claimed_bound - res.best_value;
  cert.violation = res.best_value > claimed_bound + 1e-6;
  cert.witness_params = res.best_params;
  cert.witness_settings = res.best_settings;
  return cert;
}

}  // namespace mermin
