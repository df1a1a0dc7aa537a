#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mermin/qcore.hpp"

namespace mermin {

/// Separability classes of a 3-qubit pure state.
enum class Partition {
  full_separable,  // |a>|b>|c>
  bisep_12_3,      // (qubits 1,2) x (qubit 3)
  bisep_13_2,      // (qubits 1,3) x (qubit 2)
  bisep_1_23,      // (qubit 1) x (qubits 2,3)
  unrestricted,    // any pure 3-qubit state
};

std::string to_string(Partition p);
/// Accepts the canonical names "full-separable", "bisep-12|3", "bisep-13|2",
/// "bisep-1|23", "unrestricted" plus ":" or "_" in place of "|".
std::optional<Partition> partition_from_string(std::string_view name);
bool is_biseparable(Partition p);

/// Flat real parameter vector decoding to a pure state of the declared class.
///
/// Layouts:
///   full_separable: [theta1, phi1, theta2, phi2, theta3, phi3], factor i is
///     cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
///   bisep_*: [re0, im0, re1, im1, re2, im2, re3, im3, theta, phi]; the first
///     8 reals are the pair-factor amplitudes, normalized by projection, the
///     angles give the singleton factor.
///   unrestricted: [re0, im0, ..., re7, im7], normalized by projection.
struct ClassParameters {
  Partition partition = Partition::unrestricted;
  std::vector<double> params;
};

std::size_t param_count(Partition p);

/// Parameter vector -> pure state of the declared class. The factorization
/// across the partition holds exactly by construction.
PureState decode(const ClassParameters& p);

/// Factor extraction: inverse of decode up to global phases of the factors.
/// Throws if the state does not factorize across the requested partition.
ClassParameters encode(const PureState& state, Partition partition);

/// Deterministic per seed; the decoded state is a member of the class.
ClassParameters sample(Partition partition, std::uint64_t seed);

// Named fixtures.
PureState ghz();                       // (|000> + |111>)/sqrt(2)
PureState sharp_biseparable();         // (|00> + |11>)(|0> + |1>)/2
PureState basis_state(int index);      // |000> ... |111>

/// V |GHZ><GHZ| + (1-V) I/8; <M3> on it equals 4V.
DensityMatrix noisy_ghz(double visibility);

/// Convex mixture of decoded biseparable projectors. Components may use
/// different partitions; each tag must be one of the three biseparable ones.
DensityMatrix mix_biseparable(
    std::span<const std::pair<ClassParameters, double>> components);

}  // namespace mermin
