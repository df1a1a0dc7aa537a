#include "mermin/shotsim.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mermin/rng.hpp"

namespace mermin {

namespace {

// +1 for even parity patterns (even number of -1 outcomes).
double sign_product(int pattern) {
  return (std::popcount(static_cast<unsigned>(pattern)) % 2 == 0) ? 1.0 : -1.0;
}

// Eigenprojector (I + s n.sigma)/2 of a dichotomic observable, s = +-1.
HermitianOperator eigenprojector(const Observable& o, int sign) {
  const double s = sign == 0 ? 1.0 : -1.0;
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + s * observable_matrix(o).entries());
  return HermitianOperator(std::move(m), sign == 0 ? "P+" : "P-");
}

// Exact Born distribution over the 8 sign patterns of one setting.
std::array<double, 8> outcome_distribution(
    const std::variant<PureState, DensityMatrix>& state,
    const std::array<Observable, 3>& setting) {
  std::array<double, 8> p{};
  double total = 0.0;
  for (int pattern = 0; pattern < 8; ++pattern) {
    const Matrix proj = tensor(eigenprojector(setting[0], (pattern >> 2) & 1),
                               eigenprojector(setting[1], (pattern >> 1) & 1),
                               eigenprojector(setting[2], pattern & 1))
                            .entries();
    Complex val;
    if (const PureState* pure = std::get_if<PureState>(&state)) {
      const Vector& a = pure->amplitudes();
      val = a.dot(proj * a);
    } else {
      val = (std::get<DensityMatrix>(state).entries() * proj).trace();
    }
    if (std::abs(val.imag()) > 1e-10)
      throw std::runtime_error("sample_outcomes: projector expectation has imaginary residue");
    double prob = val.real();
    if (prob < -kStateTol)
      throw std::runtime_error("sample_outcomes: negative outcome probability " +
                               std::to_string(prob));
    if (prob < 0.0) prob = 0.0;
    p[pattern] = prob;
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::runtime_error("sample_outcomes: outcome probabilities sum to " +
                             std::to_string(total));
  for (double& prob : p) prob /= total;
  return p;
}

int state_dim(const std::variant<PureState, DensityMatrix>& state) {
  if (const PureState* pure = std::get_if<PureState>(&state)) return pure->dim();
  return std::get<DensityMatrix>(state).dim();
}

}  // namespace

std::vector<std::array<Observable, 3>> mermin_settings() {
  const Observable x = Observable::x_axis();
  const Observable y = Observable::y_axis();
  return {{x, x, x}, {y, y, x}, {x, y, y}, {y, x, y}};
}

OutcomeCounts sample_outcomes(const ShotPlan& plan) {
  if (plan.settings.empty())
    throw std::invalid_argument("sample_outcomes: plan has no settings");
  if (plan.shots < 1)
    throw std::invalid_argument("sample_outcomes: shots must be >= 1");
  if (state_dim(plan.state) != 8)
    throw std::invalid_argument("sample_outcomes: state must have 3 qubits");

  OutcomeCounts out;
  out.shots = plan.shots;
  out.per_setting.reserve(plan.settings.size());
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    const auto p = outcome_distribution(plan.state, plan.settings[i]);
    std::array<double, 8> cdf{};
    double acc = 0.0;
    for (int k = 0; k < 8; ++k) {
      acc += p[k];
      cdf[k] = acc;
    }
    cdf[7] = 1.0;  // guard against rounding at the top end

    SettingCounts sc;
    sc.setting = plan.settings[i];
    Rng rng(child_seed(plan.seed, i));
    for (std::uint64_t shot = 0; shot < plan.shots; ++shot) {
      const double u = rng.uniform();
      int k = 0;
      while (cdf[k] <= u) ++k;
      ++sc.counts[k];
    }
    out.per_setting.push_back(sc);
  }
  return out;
}

CorrelationRecord estimate_correlations(const OutcomeCounts& counts) {
  if (counts.per_setting.empty())
    throw std::invalid_argument("estimate_correlations: no settings");

  std::vector<CorrelationEntry> entries;
  entries.reserve(counts.per_setting.size());
  std::ostringstream warnings;
  for (std::size_t i = 0; i < counts.per_setting.size(); ++i) {
    const SettingCounts& sc = counts.per_setting[i];
    std::uint64_t n = 0;
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
      n += sc.counts[k];
      sum += sign_product(k) * static_cast<double>(sc.counts[k]);
    }
    if (n == 0)
      throw std::invalid_argument("estimate_correlations: setting " +
                                  std::to_string(i) + " has zero shots");
    CorrelationEntry e;
    e.setting = sc.setting;
    e.value = sum / static_cast<double>(n);
    if (n == 1) {
      e.std_error = 0.0;
      warnings << "; setting " << i << ": single shot, std_error not estimable";
    } else {
      // unbiased sample variance of a +-1 variable: n (1 - E^2) / (n - 1)
      const double var1 = std::max(0.0, 1.0 - e.value * e.value);
      e.std_error = std::sqrt(var1 / static_cast<double>(n - 1));
    }
    entries.push_back(e);
  }
  std::string metadata =
      "estimated from counts; shots per setting = " + std::to_string(counts.shots) +
      warnings.str();
  return CorrelationRecord(std::move(entries), std::move(metadata));
}

CorrelationRecord run_experiment(const ShotPlan& plan) {
  const CorrelationRecord base = estimate_correlations(sample_outcomes(plan));
  std::ostringstream meta;
  meta << "simulated";
  if (!plan.state_description.empty()) meta << " state=" << plan.state_description;
  meta << " shots=" << plan.shots << " seed=" << plan.seed << "; " << base.metadata();
  return CorrelationRecord(base.entries(), meta.str());
}

}  // namespace mermin
