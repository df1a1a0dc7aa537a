#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mermin/bell.hpp"

namespace mermin {

/// One measured (or simulated) three-party correlation: the product
/// expectation E(s1, s2, s3) with its standard error.
struct CorrelationEntry {
  std::array<Observable, 3> setting;
  double value = 0.0;
  double std_error = 0.0;
};

/// Validated set of correlation entries. Values must lie inside the sanity
/// band [-1 - 3 se, 1 + 3 se]; standard errors must be nonnegative.
class CorrelationRecord {
 public:
  CorrelationRecord(std::vector<CorrelationEntry> entries, std::string metadata);

  const std::vector<CorrelationEntry>& entries() const { return entries_; }
  const std::string& metadata() const { return metadata_; }

 private:
  std::vector<CorrelationEntry> entries_;
  std::string metadata_;
};

/// The separability-class bounds on |<M3>| (and on Sigma):
/// 2 for LHV models, 2 for biseparable states under orthogonal X/Y
/// observables, 2 sqrt(2) for biseparable states under arbitrary dichotomic
/// observables, 4 algebraic maximum.
struct BoundSet {
  double lhv = 2.0;
  double biseparable_orthogonal = 2.0;
  double biseparable_free = 2.0 * std::numbers::sqrt2;
  double algebraic_max = 4.0;
};

enum class Classification {
  consistent_with_lhv,
  violates_lhv_and_bisep_orthogonal,
  violates_bisep_any_observables,
};

std::string to_string(Classification c);

struct Verdict {
  double estimate = 0.0;
  double std_error = 0.0;
  /// (|estimate| - bound) / std_error; +-infinity at zero error.
  double sigma_above_2 = 0.0;
  double sigma_above_2sqrt2 = 0.0;
  Classification classification = Classification::consistent_with_lhv;
  double confidence_k = 3.0;

  /// One-line human reading, e.g. "genuine three-qubit entanglement
  /// (orthogonal observables)".
  std::string summary() const;
};

/// E(XXX) - E(YYX) - E(XYY) - E(YXY) with independent Gaussian errors
/// combined in quadrature. The record must contain exactly one entry for
/// each of the four settings.
std::pair<double, double> estimate_m3(const CorrelationRecord& record);

/// Strongest tier whose threshold bound + k * std_error the estimate's
/// magnitude exceeds. Exceeding 2 under orthogonal observables already
/// certifies genuine tripartite entanglement.
Verdict classify(double value, double std_error, const BoundSet& bounds = {},
                 double k = 3.0);

// UTF-8 JSON: {"entries": [{"setting": [s1, s2, s3], "value": v,
// "std_error": e}, ...], "metadata": "..."} where each s is "X", "Y", "Z" or
// {"bloch": [x, y, z]}. Doubles survive a save/load round trip bit-exactly.
CorrelationRecord load_correlations(std::istream& in);
CorrelationRecord load_correlations(const std::filesystem::path& path);
void save_correlations(const CorrelationRecord& record, std::ostream& out);
void save_correlations(const CorrelationRecord& record, const std::filesystem::path& path);

}  // namespace mermin
