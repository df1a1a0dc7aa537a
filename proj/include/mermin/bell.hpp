#pragma once

#include <string>

#include "mermin/qcore.hpp"
#include "mermin/rng.hpp"

namespace mermin {

/// Dichotomic +-1 spin observable, given by a unit Bloch vector n: the
/// realized operator is n . (X, Y, Z).
struct Observable {
  Eigen::Vector3d bloch;

  static Observable from_bloch(const Eigen::Vector3d& n);
  static Observable from_bloch(double x, double y, double z);
  /// theta = polar angle from +z, phi = azimuth; unit norm by construction.
  static Observable from_angles(double theta, double phi);
  /// Uniform on the sphere, consumes two uniforms from the stream.
  static Observable random(Rng& rng);

  static Observable x_axis() { return from_bloch(1, 0, 0); }
  static Observable y_axis() { return from_bloch(0, 1, 0); }
  static Observable z_axis() { return from_bloch(0, 0, 1); }
};

/// 2x2 matrix bloch . (X, Y, Z); squares to the identity.
HermitianOperator observable_matrix(const Observable& o);

/// Two settings per qubit: (a, a') on qubit 1, (b, b') on 2, (c, c') on 3.
struct MeasurementSettings {
  Observable a, a_prime, b, b_prime, c, c_prime;

  /// Unprimed settings on the x axis, primed on the y axis. With these the
  /// Sigma combination reduces to the Mermin operator.
  static MeasurementSettings mermin_axes();
};

enum class BellKind { mermin_fixed, sigma_general };

std::string to_string(BellKind kind);

/// 8x8 hermitian, traceless Bell operator together with the settings that
/// produced it.
struct BellOperator {
  HermitianOperator matrix;
  MeasurementSettings settings;
  BellKind kind;
};

/// M3 = XXX - YYX - XYY - YXY.
BellOperator build_mermin();

/// a(x)b(x)c - a'(x)b'(x)c - a(x)b'(x)c' - a'(x)b(x)c'. With orthogonal axis
/// settings this reproduces build_mermin() entrywise.
BellOperator build_sigma(const MeasurementSettings& s);

/// Signed expectation of op on a 3-qubit state. Callers that need the
/// inequality form take the absolute value themselves.
double bell_value(const PureState& state, const BellOperator& op);
double bell_value(const DensityMatrix& state, const BellOperator& op);

/// v1 lives on the two-qubit factor, v2 on the singleton:
///   v1 = (<XX> - <YY>, -<XY> - <YX>),  v2 = (<X>, <Y>).
/// For a product state v1 . v2 equals <M3>; physical states obey
/// |v1| <= 2 and |v2| <= 1.
struct CorrelationVectorPair {
  Eigen::Vector2d v1;
  Eigen::Vector2d v2;
};

CorrelationVectorPair correlation_vectors(const PureState& pair_state,
                                          const PureState& single_state);
CorrelationVectorPair correlation_vectors(const DensityMatrix& pair_state,
                                          const DensityMatrix& single_state);

}  // namespace mermin
