#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mermin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance for construction-level identities (norms, hermiticity of
// operators assembled from exact constants).
inline constexpr double kTightTol = 1e-12;
// Tolerance for validated physical-state checks (PSD, unit trace).
inline constexpr double kStateTol = 1e-9;

/// Normalized amplitude vector for 1, 2 or 3 qubits.
///
/// Qubit 1 is the most significant bit of the basis index: for three qubits,
/// |q1 q2 q3> lives at index (q1<<2) | (q2<<1) | q3.
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  int num_qubits() const;
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(int basis_index) const { return amps_(basis_index); }

 private:
  Vector amps_;
};

/// Hermitian, positive semidefinite, unit-trace operator (2x2, 4x4 or 8x8).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  static DensityMatrix from_pure(const PureState& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

 private:
  Matrix m_;
};

/// Square complex matrix, hermitian within 1e-12 entrywise. Carrier for
/// observables and Bell operators.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries, std::string label = "");

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }
  const std::string& label() const { return label_; }

 private:
  Matrix m_;
  std::string label_;
};

// Pauli matrices, X = [[0,1],[1,0]], Y = [[0,-i],[i,0]], Z = [[1,0],[0,-1]].
const HermitianOperator& pauli_x();
const HermitianOperator& pauli_y();
const HermitianOperator& pauli_z();
HermitianOperator identity_op(int dim);

/// Kronecker product in argument order; qubit 1 most significant.
/// Rejects results larger than 8x8.
HermitianOperator tensor(std::span<const HermitianOperator> ops);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         const HermitianOperator& c);

/// Tensor product of state factors, same ordering convention.
PureState tensor(const PureState& a, const PureState& b);

/// <psi|O|psi> resp. Tr(rho O). The imaginary residue must stay below 1e-10;
/// anything larger signals a non-hermitian operator and throws.
double expectation(const PureState& state, const HermitianOperator& op);
double expectation(const DensityMatrix& state, const HermitianOperator& op);

/// Convex combination of density matrices. Weights must be nonnegative and
/// sum to 1 within 1e-12.
DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);

/// Haar-like sample: complex standard-normal vector, normalized.
/// Deterministic per seed.
PureState random_pure(int dim, std::uint64_t seed);

}  // namespace mermin
