#include "mermin/stateclasses.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "mermin/bell.hpp"
#include "mermin/rng.hpp"

namespace mermin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Qubit q (1-based) occupies bit 3-q of the 3-qubit basis index.
constexpr int bit_of_qubit(int q) { return 3 - q; }

Eigen::Vector2cd single_qubit_factor(double theta, double phi) {
  return {Complex(std::cos(theta / 2.0), 0.0),
          std::polar(std::sin(theta / 2.0), phi)};
}

// Pair qubits in ascending order plus the leftover qubit for each partition.
struct FactorLayout {
  int pair_hi, pair_lo, single;
};

FactorLayout layout_of(Partition p) {
  switch (p) {
    case Partition::bisep_12_3: return {1, 2, 3};
    case Partition::bisep_13_2: return {1, 3, 2};
    case Partition::bisep_1_23: return {2, 3, 1};
    default: throw std::logic_error("layout_of: not a biseparable partition");
  }
}

Vector assemble_biseparable(const Eigen::Vector4cd& pair, const Eigen::Vector2cd& single,
                            const FactorLayout& lay) {
  Vector amps(8);
  for (int idx = 0; idx < 8; ++idx) {
    const int b_hi = (idx >> bit_of_qubit(lay.pair_hi)) & 1;
    const int b_lo = (idx >> bit_of_qubit(lay.pair_lo)) & 1;
    const int b_s = (idx >> bit_of_qubit(lay.single)) & 1;
    amps(idx) = pair((b_hi << 1) | b_lo) * single(b_s);
  }
  return amps;
}

Eigen::Vector4cd pair_from_params(std::span<const double> raw) {
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = Complex(raw[2 * i], raw[2 * i + 1]);
  const double norm = v.norm();
  if (norm < 1e-12)
    throw std::invalid_argument("decode: degenerate (near-zero) pair amplitudes");
  return v / norm;
}

// Reduced density matrix of a 3-qubit pure state over the kept qubits
// (ascending). Used for factor extraction only.
Matrix reduced_state(const Vector& amps, std::span<const int> keep) {
  std::vector<int> keep_bits, env_bits;
  for (int q : keep) keep_bits.push_back(bit_of_qubit(q));
  for (int q = 1; q <= 3; ++q) {
    bool kept = false;
    for (int k : keep) kept = kept || (k == q);
    if (!kept) env_bits.push_back(bit_of_qubit(q));
  }
  const int nk = static_cast<int>(keep_bits.size());
  const int ne = static_cast<int>(env_bits.size());
  const int dk = 1 << nk;
  const int de = 1 << ne;
  auto compose = [&](int kidx, int eidx) {
    int idx = 0;
    for (int i = 0; i < nk; ++i)
      if ((kidx >> (nk - 1 - i)) & 1) idx |= 1 << keep_bits[i];
    for (int i = 0; i < ne; ++i)
      if ((eidx >> (ne - 1 - i)) & 1) idx |= 1 << env_bits[i];
    return idx;
  };
  Matrix rho = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j)
      for (int e = 0; e < de; ++e)
        rho(i, j) += amps(compose(i, e)) * std::conj(amps(compose(j, e)));
  return rho;
}

// Bloch angles of a single-qubit reduced state; requires purity ~ 1.
std::array<double, 2> bloch_angles(const Matrix& rho, const std::string& what) {
  const double x = 2.0 * rho(0, 1).real();
  const double y = -2.0 * rho(0, 1).imag();
  const double z = (rho(0, 0) - rho(1, 1)).real();
  const double norm2 = x * x + y * y + z * z;
  if (norm2 < 1.0 - 1e-9)
    throw std::invalid_argument("encode: " + what +
                                " is mixed; state does not factorize as requested");
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  const double phi = (x * x + y * y < 1e-24) ? 0.0 : std::atan2(y, x);
  return {theta, phi};
}

}  // namespace

std::string to_string(Partition p) {
  switch (p) {
    case Partition::full_separable: return "full-separable";
    case Partition::bisep_12_3: return "bisep-12|3";
    case Partition::bisep_13_2: return "bisep-13|2";
    case Partition::bisep_1_23: return "bisep-1|23";
    case Partition::unrestricted: return "unrestricted";
  }
  return "?";
}

std::optional<Partition> partition_from_string(std::string_view name) {
  std::string canon(name);
  for (char& c : canon)
    if (c == ':' || c == '_') c = '|';
  if (canon == "full-separable") return Partition::full_separable;
  if (canon == "bisep-12|3") return Partition::bisep_12_3;
  if (canon == "bisep-13|2") return Partition::bisep_13_2;
  if (canon == "bisep-1|23") return Partition::bisep_1_23;
  if (canon == "unrestricted") return Partition::unrestricted;
  return std::nullopt;
}

bool is_biseparable(Partition p) {
  return p == Partition::bisep_12_3 || p == Partition::bisep_13_2 ||
         p == Partition::bisep_1_23;
}

std::size_t param_count(Partition p) {
  switch (p) {
    case Partition::full_separable: return 6;
    case Partition::bisep_12_3:
    case Partition::bisep_13_2:
    case Partition::bisep_1_23: return 10;
    case Partition::unrestricted: return 16;
  }
  return 0;
}

PureState decode(const ClassParameters& p) {
  if (p.params.size() != param_count(p.partition))
    throw std::invalid_argument("decode: " + to_string(p.partition) + " expects " +
                                std::to_string(param_count(p.partition)) +
                                " parameters, got " + std::to_string(p.params.size()));
  const std::span<const double> v(p.params);
  switch (p.partition) {
    case Partition::full_separable: {
      Vector amps(8);
      std::array<Eigen::Vector2cd, 3> f;
      for (int q = 0; q < 3; ++q) f[q] = single_qubit_factor(v[2 * q], v[2 * q + 1]);
      for (int idx = 0; idx < 8; ++idx)
        amps(idx) = f[0]((idx >> 2) & 1) * f[1]((idx >> 1) & 1) * f[2](idx & 1);
      return PureState(std::move(amps));
    }
    case Partition::bisep_12_3:
    case Partition::bisep_13_2:
    case Partition::bisep_1_23: {
      const Eigen::Vector4cd pair = pair_from_params(v.subspan(0, 8));
      const Eigen::Vector2cd single = single_qubit_factor(v[8], v[9]);
      return PureState(assemble_biseparable(pair, single, layout_of(p.partition)));
    }
    case Partition::unrestricted: {
      Vector amps(8);
      for (int i = 0; i < 8; ++i) amps(i) = Complex(v[2 * i], v[2 * i + 1]);
      const double norm = amps.norm();
      if (norm < 1e-12)
        throw std::invalid_argument("decode: degenerate (near-zero) amplitudes");
      amps /= norm;
      return PureState(std::move(amps));
    }
  }
  throw std::logic_error("decode: unknown partition");
}

ClassParameters encode(const PureState& state, Partition partition) {
  if (state.dim() != 8)
    throw std::invalid_argument("encode: state must have 3 qubits");
  const Vector& amps = state.amplitudes();
  ClassParameters out;
  out.partition = partition;
  switch (partition) {
    case Partition::full_separable: {
      out.params.reserve(6);
      for (int q = 1; q <= 3; ++q) {
        const int keep[] = {q};
        const auto angles =
            bloch_angles(reduced_state(amps, keep), "qubit " + std::to_string(q));
        out.params.push_back(angles[0]);
        out.params.push_back(angles[1]);
      }
      return out;
    }
    case Partition::bisep_12_3:
    case Partition::bisep_13_2:
    case Partition::bisep_1_23: {
      const FactorLayout lay = layout_of(partition);
      const int keep[] = {lay.pair_hi, lay.pair_lo};
      const Matrix rho_pair = reduced_state(amps, keep);
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho_pair);
      const auto& evals = es.eigenvalues();
      if (evals(3) < 1.0 - 1e-9)
        throw std::invalid_argument("encode: pair factor of " + to_string(partition) +
                                    " is mixed; state does not factorize as requested");
      const Vector pair = es.eigenvectors().col(3);
      out.params.reserve(10);
      for (int i = 0; i < 4; ++i) {
        out.params.push_back(pair(i).real());
        out.params.push_back(pair(i).imag());
      }
      const int keep_single[] = {lay.single};
      const auto angles = bloch_angles(reduced_state(amps, keep_single),
                                       "qubit " + std::to_string(lay.single));
      out.params.push_back(angles[0]);
      out.params.push_back(angles[1]);
      return out;
    }
    case Partition::unrestricted: {
      out.params.reserve(16);
      for (int i = 0; i < 8; ++i) {
        out.params.push_back(amps(i).real());
        out.params.push_back(amps(i).imag());
      }
      return out;
    }
  }
  throw std::logic_error("encode: unknown partition");
}

ClassParameters sample(Partition partition, std::uint64_t seed) {
  Rng rng(seed);
  ClassParameters out;
  out.partition = partition;
  auto push_sphere_angles = [&] {
    out.params.push_back(std::acos(1.0 - 2.0 * rng.uniform()));
    out.params.push_back(2.0 * kPi * rng.uniform());
  };
  switch (partition) {
    case Partition::full_separable:
      for (int q = 0; q < 3; ++q) push_sphere_angles();
      break;
    case Partition::bisep_12_3:
    case Partition::bisep_13_2:
    case Partition::bisep_1_23:
      for (int i = 0; i < 8; ++i) out.params.push_back(rng.gaussian());
      push_sphere_angles();
      break;
    case Partition::unrestricted:
      for (int i = 0; i < 16; ++i) out.params.push_back(rng.gaussian());
      break;
  }
  return out;
}

PureState ghz() {
  Vector amps = Vector::Zero(8);
  amps(0) = amps(7) = Complex(1.0 / std::sqrt(2.0), 0.0);
  return PureState(std::move(amps));
}

PureState sharp_biseparable() {
  Vector amps = Vector::Zero(8);
  amps(0) = amps(1) = amps(6) = amps(7) = Complex(0.5, 0.0);
  return PureState(std::move(amps));
}

PureState basis_state(int index) {
  if (index < 0 || index > 7)
    throw std::invalid_argument("basis_state: index must be in [0, 7]");
  Vector amps = Vector::Zero(8);
  amps(index) = 1.0;
  return PureState(std::move(amps));
}

DensityMatrix noisy_ghz(double visibility) {
  if (visibility < 0.0 || visibility > 1.0)
    throw std::invalid_argument("noisy_ghz: visibility must be in [0, 1]");
  const Vector g = ghz().amplitudes();
  Matrix m = visibility * (g * g.adjoint()).eval() +
             ((1.0 - visibility) / 8.0) * Matrix::Identity(8, 8);
  return DensityMatrix(std::move(m));
}

DensityMatrix mix_biseparable(
    std::span<const std::pair<ClassParameters, double>> components) {
  if (components.empty())
    throw std::invalid_argument("mix_biseparable: empty component list");
  std::vector<DensityMatrix> states;
  std::vector<double> weights;
  states.reserve(components.size());
  weights.reserve(components.size());
  for (const auto& [params, weight] : components) {
    if (!is_biseparable(params.partition))
      throw std::invalid_argument("mix_biseparable: component tag " +
                                  to_string(params.partition) + " is not biseparable");
    states.push_back(DensityMatrix::from_pure(decode(params)));
    weights.push_back(weight);
  }
  return mix(states, weights);
}

}  // namespace mermin
