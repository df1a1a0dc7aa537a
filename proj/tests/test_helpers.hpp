#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mermin/qcore.hpp"

// Reference implementations used to check the library. Everything here is
// written with explicit loops and its own Pauli constants so that a bug in
// the library cannot hide in its oracle.
namespace oracle {

using mermin::Complex;
using mermin::Matrix;
using mermin::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix pauli(char which) {
  Matrix m = Matrix::Zero(2, 2);
  const Complex im(0, 1);
  switch (which) {
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = -im; m(1, 0) = im; break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: m(0, 0) = 1; m(1, 1) = 1; break;
  }
  return m;
}

inline Matrix triple(const std::string& s) {
  return kron(kron(pauli(s[0]), pauli(s[1])), pauli(s[2]));
}

// M3 = XXX - YYX - XYY - YXY, assembled only from the constants above.
inline Matrix m3() {
  return triple("XXX") - triple("YYX") - triple("XYY") - triple("YXY");
}

inline Complex expect(const Vector& a, const Matrix& m) {
  Complex out = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out += std::conj(a(i)) * m(i, j) * a(j);
  return out;
}

inline Complex expect_tr(const Matrix& rho, const Matrix& m) {
  Complex out = 0;
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j) out += rho(i, j) * m(j, i);
  return out;
}

// Bit of qubit q (1-based, qubit 1 most significant) in a 3-qubit index.
inline int bit3(int index, int q) { return (index >> (3 - q)) & 1; }

// Partial trace of an 8x8 density matrix onto the listed qubits (ascending,
// 1-based). The kept qubits retain their relative order.
inline Matrix reduce(const Matrix& rho, const std::vector<int>& keep) {
  std::vector<int> drop;
  for (int q = 1; q <= 3; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) drop.push_back(q);
  const int dk = 1 << keep.size();
  const int dd = 1 << drop.size();
  auto assemble = [&](int kbits, int dbits) {
    int index = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      index |= ((kbits >> (keep.size() - 1 - i)) & 1) << (3 - keep[i]);
    for (std::size_t i = 0; i < drop.size(); ++i)
      index |= ((dbits >> (drop.size() - 1 - i)) & 1) << (3 - drop[i]);
    return index;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c)
      for (int t = 0; t < dd; ++t) out(r, c) += rho(assemble(r, t), assemble(c, t));
  return out;
}

// Relabels qubits: input qubit q becomes output qubit perm[q-1].
inline Vector permute_qubits(const Vector& a, const std::array<int, 3>& perm) {
  Vector out(8);
  for (int i = 0; i < 8; ++i) {
    int j = 0;
    for (int q = 1; q <= 3; ++q) j |= bit3(i, q) << (3 - perm[q - 1]);
    out(j) = a(i);
  }
  return out;
}

}  // namespace oracle
