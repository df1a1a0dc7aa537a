#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mermin/witness.hpp"

namespace mermin {

/// Measurement plan: a 3-qubit state, a list of 3-observable settings, and a
/// per-setting shot count. Pure states are sampled without building the
/// projector onto a density matrix.
struct ShotPlan {
  explicit ShotPlan(std::variant<PureState, DensityMatrix> s) : state(std::move(s)) {}

  std::variant<PureState, DensityMatrix> state;
  std::vector<std::array<Observable, 3>> settings;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  std::string state_description;  // lands in the record metadata
};

/// The four settings of the Mermin combination: XXX, YYX, XYY, YXY.
std::vector<std::array<Observable, 3>> mermin_settings();

/// Counts over the 8 sign patterns of one setting. Pattern bit 3-q is the
/// outcome of qubit q (0 for +1, 1 for -1), so qubit 1 is the most
/// significant bit, matching the state index convention.
struct SettingCounts {
  std::array<Observable, 3> setting;
  std::array<std::uint64_t, 8> counts{};
};

struct OutcomeCounts {
  std::vector<SettingCounts> per_setting;
  std::uint64_t shots = 0;
};

/// Outcomes drawn from the exact 8-point Born distribution of each setting
/// (eigenprojector expectations), sampled by inverse CDF. Setting i uses the
/// stream child_seed(plan.seed, i); results are deterministic per seed and
/// independent of evaluation order.
OutcomeCounts sample_outcomes(const ShotPlan& plan);

/// Per setting: E = mean sign product, std error = unbiased sample standard
/// deviation of the sign product / sqrt(shots). Settings with zero variance
/// report a std error of exactly 0; a single-shot plan reports 0 with a
/// warning in the metadata.
CorrelationRecord estimate_correlations(const OutcomeCounts& counts);

/// sample_outcomes followed by estimate_correlations; metadata records the
/// state description, shot count and seed.
CorrelationRecord run_experiment(const ShotPlan& plan);

}  // namespace mermin
