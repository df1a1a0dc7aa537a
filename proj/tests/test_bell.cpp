#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "mermin/bell.hpp"
#include "mermin/stateclasses.hpp"
#include "test_helpers.hpp"

using namespace mermin;

TEST_CASE("Observable construction") {
  SUBCASE("from_bloch demands a unit vector") {
    CHECK_NOTHROW(Observable::from_bloch(0, 0, 1));
    CHECK_THROWS_AS(Observable::from_bloch(0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Observable::from_bloch(0.5, 0.5, 0.5), std::invalid_argument);
  }
  SUBCASE("from_angles lands on the sphere") {
    for (double theta : {0.0, 0.7, 1.9, 3.1}) {
      for (double phi : {0.0, 2.0, 5.5}) {
        const Observable o = Observable::from_angles(theta, phi);
        CHECK(std::abs(o.bloch.norm() - 1.0) < 1e-12);
      }
    }
    const Observable top = Observable::from_angles(0.0, 0.3);
    CHECK(std::abs(top.bloch.z() - 1.0) < 1e-15);
  }
  SUBCASE("random points are unit and reproducible") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) {
      const Observable oa = Observable::random(a);
      const Observable ob = Observable::random(b);
      REQUIRE((oa.bloch - ob.bloch).norm() == 0.0);
      REQUIRE(std::abs(oa.bloch.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("observable_matrix is n.sigma") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Observable o = Observable::random(rng);
    const Matrix want = o.bloch.x() * oracle::pauli('X') +
                        o.bloch.y() * oracle::pauli('Y') +
                        o.bloch.z() * oracle::pauli('Z');
    const Matrix got = observable_matrix(o).entries();
    REQUIRE((got - want).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE((got * got - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("mermin operator matches the four-term oracle") {
  const BellOperator m3 = build_mermin();
  CHECK(m3.kind == BellKind::mermin_fixed);
  CHECK((m3.matrix.entries() - oracle::m3()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(m3.matrix.entries().trace()) == 0.0);

  SUBCASE("corner matrix element <000|M3|111> is 4") {
    CHECK(m3.matrix.entries()(0, 7) == Complex(4.0, 0.0));
  }
  SUBCASE("sigma with axis settings reproduces it entrywise") {
    const BellOperator sigma = build_sigma(MeasurementSettings::mermin_axes());
    CHECK(sigma.kind == BellKind::sigma_general);
    CHECK((sigma.matrix.entries() - m3.matrix.entries()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("mermin_axes picks x unprimed, y primed") {
  const MeasurementSettings s = MeasurementSettings::mermin_axes();
  const Eigen::Vector3d x(1, 0, 0), y(0, 1, 0);
  CHECK((s.a.bloch - x).norm() == 0.0);
  CHECK((s.b.bloch - x).norm() == 0.0);
  CHECK((s.c.bloch - x).norm() == 0.0);
  CHECK((s.a_prime.bloch - y).norm() == 0.0);
  CHECK((s.b_prime.bloch - y).norm() == 0.0);
  CHECK((s.c_prime.bloch - y).norm() == 0.0);
}

TEST_CASE("bell_value on the reference states") {
  const BellOperator m3 = build_mermin();
  CHECK(std::abs(bell_value(ghz(), m3) - 4.0) < 1e-12);
  CHECK(std::abs(bell_value(sharp_biseparable(), m3) - 2.0) < 1e-12);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(bell_value(basis_state(i), m3)) < 1e-12);

  SUBCASE("pure and density paths agree") {
    for (int t = 0; t < 50; ++t) {
      const PureState psi = random_pure(8, 400 + t);
      const double pure = bell_value(psi, m3);
      const double dens = bell_value(DensityMatrix::from_pure(psi), m3);
      REQUIRE(std::abs(pure - dens) < 1e-11);
      REQUIRE(std::abs(pure - oracle::expect(psi.amplitudes(), oracle::m3()).real()) <
              1e-11);
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(bell_value(random_pure(4, 1), m3), std::invalid_argument);
  }
}

TEST_CASE("sigma operator stays hermitian and bounded by 4") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    MeasurementSettings s{Observable::random(rng), Observable::random(rng),
                          Observable::random(rng), Observable::random(rng),
                          Observable::random(rng), Observable::random(rng)};
    const BellOperator op = build_sigma(s);
    const Matrix& m = op.matrix.entries();
    REQUIRE((m - m.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
    const PureState psi = random_pure(8, 9000 + t);
    REQUIRE(std::abs(bell_value(psi, op)) <= 4.0 + 1e-9);
  }
}

TEST_CASE("correlation vectors") {
  SUBCASE("norm constraints on random states") {
    for (int t = 0; t < 2000; ++t) {
      const PureState pair = random_pure(4, 5000 + t);
      const PureState single = random_pure(2, 6000 + t);
      const CorrelationVectorPair cv = correlation_vectors(pair, single);
      REQUIRE(cv.v1.norm() <= 2.0 + 1e-9);
      REQUIRE(cv.v2.norm() <= 1.0 + 1e-10);
    }
  }
  SUBCASE("v1 . v2 equals the Mermin value on product states") {
    const BellOperator m3 = build_mermin();
    for (int t = 0; t < 500; ++t) {
      const PureState pair = random_pure(4, 7000 + t);
      const PureState single = random_pure(2, 8000 + t);
      const CorrelationVectorPair cv = correlation_vectors(pair, single);
      const PureState product = tensor(pair, single);
      REQUIRE(std::abs(cv.v1.dot(cv.v2) - bell_value(product, m3)) < 1e-10);
    }
  }
  SUBCASE("density overload agrees with the pure one") {
    const PureState pair = random_pure(4, 71);
    const PureState single = random_pure(2, 81);
    const CorrelationVectorPair a = correlation_vectors(pair, single);
    const CorrelationVectorPair b = correlation_vectors(
        DensityMatrix::from_pure(pair), DensityMatrix::from_pure(single));
    CHECK((a.v1 - b.v1).norm() < 1e-12);
    CHECK((a.v2 - b.v2).norm() < 1e-12);
  }
  SUBCASE("the sharp biseparable state saturates both norms") {
    Vector bell4(4);
    bell4 << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const CorrelationVectorPair cv =
        correlation_vectors(PureState(bell4), PureState(plus));
    CHECK(std::abs(cv.v1.norm() - 2.0) < 1e-12);
    CHECK(std::abs(cv.v2.norm() - 1.0) < 1e-12);
    CHECK(std::abs(cv.v1.dot(cv.v2) - 2.0) < 1e-12);
  }
}

TEST_CASE("BellKind names") {
  CHECK(to_string(BellKind::mermin_fixed) == "mermin-fixed");
  CHECK(to_string(BellKind::sigma_general) == "sigma-general");
}
