#include "mermin/qcore.hpp"

#include <cmath>
#include <stdexcept>

#include "mermin/rng.hpp"

namespace mermin {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool valid_dim(int d) { return d == 2 || d == 4 || d == 8; }

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  require(valid_dim(static_cast<int>(amps_.size())),
          "PureState: dimension must be 2, 4 or 8, got " + std::to_string(amps_.size()));
  const double norm2 = amps_.squaredNorm();
  require(std::abs(norm2 - 1.0) <= kTightTol,
          "PureState: amplitudes are not normalized, |psi|^2 = " + std::to_string(norm2));
}

int PureState::num_qubits() const {
  switch (dim()) {
    case 2: return 1;
    case 4: return 2;
    default: return 3;
  }
}

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  require(m_.rows() == m_.cols(), "DensityMatrix: matrix must be square");
  require(valid_dim(static_cast<int>(m_.rows())),
          "DensityMatrix: dimension must be 2, 4 or 8, got " + std::to_string(m_.rows()));
  require(hermiticity_defect(m_) <= kStateTol, "DensityMatrix: not hermitian");
  const Complex tr = m_.trace();
  require(std::abs(tr - Complex(1.0, 0.0)) <= kStateTol,
          "DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -kStateTol,
          "DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

HermitianOperator::HermitianOperator(Matrix entries, std::string label)
    : m_(std::move(entries)), label_(std::move(label)) {
  require(m_.rows() == m_.cols(), "HermitianOperator: matrix must be square");
  require(hermiticity_defect(m_) <= kTightTol,
          "HermitianOperator '" + label_ + "': not hermitian");
}

const HermitianOperator& pauli_x() {
  static const HermitianOperator op = [] {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(m, "X");
  }();
  return op;
}

const HermitianOperator& pauli_y() {
  static const HermitianOperator op = [] {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return HermitianOperator(m, "Y");
  }();
  return op;
}

const HermitianOperator& pauli_z() {
  static const HermitianOperator op = [] {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(m, "Z");
  }();
  return op;
}

HermitianOperator identity_op(int dim) {
  require(valid_dim(dim), "identity_op: dimension must be 2, 4 or 8");
  return HermitianOperator(Matrix::Identity(dim, dim), "I");
}

HermitianOperator tensor(std::span<const HermitianOperator> ops) {
  require(!ops.empty(), "tensor: empty operator list");
  Matrix acc = ops[0].entries();
  std::string label = ops[0].label();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    require(acc.rows() * ops[i].dim() <= 8,
            "tensor: product dimension exceeds 8");
    acc = kron(acc, ops[i].entries());
    label += "*" + ops[i].label();
  }
  return HermitianOperator(std::move(acc), std::move(label));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const HermitianOperator ops[] = {a, b};
  return tensor(std::span<const HermitianOperator>(ops));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         const HermitianOperator& c) {
  const HermitianOperator ops[] = {a, b, c};
  return tensor(std::span<const HermitianOperator>(ops));
}

PureState tensor(const PureState& a, const PureState& b) {
  require(a.dim() * b.dim() <= 8, "tensor: product dimension exceeds 8");
  Vector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      out(i * b.dim() + j) = a.amplitude(i) * b.amplitude(j);
  return PureState(std::move(out));
}

namespace {

double strip_imaginary(Complex value, const std::string& label) {
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("expectation of '" + label +
                             "' has imaginary residue " + std::to_string(value.imag()) +
                             "; operator is not hermitian");
  return value.real();
}

}  // namespace

double expectation(const PureState& state, const HermitianOperator& op) {
  require(state.dim() == op.dim(), "expectation: dimension mismatch (state " +
                                       std::to_string(state.dim()) + ", operator " +
                                       std::to_string(op.dim()) + ")");
  const Vector& a = state.amplitudes();
  const Complex val = a.dot(op.entries() * a);  // dot conjugates the left side
  return strip_imaginary(val, op.label());
}

double expectation(const DensityMatrix& state, const HermitianOperator& op) {
  require(state.dim() == op.dim(), "expectation: dimension mismatch (state " +
                                       std::to_string(state.dim()) + ", operator " +
                                       std::to_string(op.dim()) + ")");
  const Complex val = (state.entries() * op.entries()).trace();
  return strip_imaginary(val, op.label());
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
  require(!states.empty(), "mix: empty state list");
  require(states.size() == weights.size(), "mix: states and weights differ in length");
  double sum = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "mix: negative weight " + std::to_string(w));
    sum += w;
  }
  require(std::abs(sum - 1.0) <= kTightTol,
          "mix: weights sum to " + std::to_string(sum) + ", expected 1");
  const int d = states[0].dim();
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    require(states[i].dim() == d, "mix: dimension mismatch between components");
    acc += weights[i] * states[i].entries();
  }
  return DensityMatrix(std::move(acc));
}

PureState random_pure(int dim, std::uint64_t seed) {
  require(valid_dim(dim), "random_pure: dimension must be 2, 4 or 8");
  Rng rng(seed);
  Vector v(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      v(i) = Complex(rng.gaussian(), rng.gaussian());
    }
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-12);  // unreachable in practice, keeps the division safe
  v /= std::sqrt(norm2);
  return PureState(std::move(v));
}

}  // namespace mermin
