#include "mermin/bell.hpp"

#include <cmath>
#include <stdexcept>

namespace mermin {

namespace {

std::string axis_label(const Eigen::Vector3d& n) {
  if (n == Eigen::Vector3d(1, 0, 0)) return "X";
  if (n == Eigen::Vector3d(0, 1, 0)) return "Y";
  if (n == Eigen::Vector3d(0, 0, 1)) return "Z";
  return "n.sigma";
}

}  // namespace

Observable Observable::from_bloch(const Eigen::Vector3d& n) {
  const double norm = n.norm();
  if (std::abs(norm - 1.0) > kTightTol)
    throw std::invalid_argument("Observable: Bloch vector has norm " +
                                std::to_string(norm) + ", expected 1");
  return Observable{n};
}

Observable Observable::from_bloch(double x, double y, double z) {
  return from_bloch(Eigen::Vector3d(x, y, z));
}

Observable Observable::from_angles(double theta, double phi) {
  const double s = std::sin(theta);
  Eigen::Vector3d n(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
  n.normalize();
  return Observable{n};
}

Observable Observable::random(Rng& rng) {
  const double z = 1.0 - 2.0 * rng.uniform();
  const double phi = 2.0 * 3.14159265358979323846 * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  Eigen::Vector3d n(s * std::cos(phi), s * std::sin(phi), z);
  n.normalize();
  return Observable{n};
}

HermitianOperator observable_matrix(const Observable& o) {
  const double norm = o.bloch.norm();
  if (std::abs(norm - 1.0) > kTightTol)
    throw std::invalid_argument("observable_matrix: Bloch vector has norm " +
                                std::to_string(norm) + ", expected 1");
  Matrix m = o.bloch.x() * pauli_x().entries() + o.bloch.y() * pauli_y().entries() +
             o.bloch.z() * pauli_z().entries();
  return HermitianOperator(std::move(m), axis_label(o.bloch));
}

MeasurementSettings MeasurementSettings::mermin_axes() {
  return MeasurementSettings{Observable::x_axis(), Observable::y_axis(),
                             Observable::x_axis(), Observable::y_axis(),
                             Observable::x_axis(), Observable::y_axis()};
}

std::string to_string(BellKind kind) {
  return kind == BellKind::mermin_fixed ? "mermin-fixed" : "sigma-general";
}

BellOperator build_mermin() {
  const HermitianOperator& x = pauli_x();
  const HermitianOperator& y = pauli_y();
  Matrix m = tensor(x, x, x).entries() - tensor(y, y, x).entries() -
             tensor(x, y, y).entries() - tensor(y, x, y).entries();
  return BellOperator{HermitianOperator(std::move(m), "M3"),
                      MeasurementSettings::mermin_axes(), BellKind::mermin_fixed};
}

BellOperator build_sigma(const MeasurementSettings& s) {
  const HermitianOperator a = observable_matrix(s.a);
  const HermitianOperator ap = observable_matrix(s.a_prime);
  const HermitianOperator b = observable_matrix(s.b);
  const HermitianOperator bp = observable_matrix(s.b_prime);
  const HermitianOperator c = observable_matrix(s.c);
  const HermitianOperator cp = observable_matrix(s.c_prime);
  Matrix m = tensor(a, b, c).entries() - tensor(ap, bp, c).entries() -
             tensor(a, bp, cp).entries() - tensor(ap, b, cp).entries();
  return BellOperator{HermitianOperator(std::move(m), "Sigma"), s,
                      BellKind::sigma_general};
}

double bell_value(const PureState& state, const BellOperator& op) {
  if (state.dim() != 8)
    throw std::invalid_argument("bell_value: state must have 3 qubits");
  return expectation(state, op.matrix);
}

double bell_value(const DensityMatrix& state, const BellOperator& op) {
  if (state.dim() != 8)
    throw std::invalid_argument("bell_value: state must have 3 qubits");
  return expectation(state, op.matrix);
}

namespace {

template <typename State2, typename State1>
CorrelationVectorPair correlation_vectors_impl(const State2& pair_state,
                                               const State1& single_state) {
  if (pair_state.dim() != 4)
    throw std::invalid_argument("correlation_vectors: first state must have 2 qubits");
  if (single_state.dim() != 2)
    throw std::invalid_argument("correlation_vectors: second state must have 1 qubit");
  const HermitianOperator& x = pauli_x();
  const HermitianOperator& y = pauli_y();
  const double xx = expectation(pair_state, tensor(x, x));
  const double yy = expectation(pair_state, tensor(y, y));
  const double xy = expectation(pair_state, tensor(x, y));
  const double yx = expectation(pair_state, tensor(y, x));
  CorrelationVectorPair out;
  out.v1 = Eigen::Vector2d(xx - yy, -xy - yx);
  out.v2 = Eigen::Vector2d(expectation(single_state, x), expectation(single_state, y));
  return out;
}

}  // namespace

CorrelationVectorPair correlation_vectors(const PureState& pair_state,
                                          const PureState& single_state) {
  return correlation_vectors_impl(pair_state, single_state);
}

CorrelationVectorPair correlation_vectors(const DensityMatrix& pair_state,
                                          const DensityMatrix& single_state) {
  return correlation_vectors_impl(pair_state, single_state);
}

}  // namespace mermin
