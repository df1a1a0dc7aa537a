#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "mermin/bell.hpp"
#include "mermin/rng.hpp"
#include "mermin/stateclasses.hpp"
#include "test_helpers.hpp"

using namespace mermin;

namespace {

// |<a|b>| = 1 iff the states agree up to a global phase.
double fidelity(const PureState& a, const PureState& b) {
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

double purity(const oracle::Matrix& rho) {
  return oracle::expect_tr(rho, rho).real();
}

ClassParameters random_params(Partition p, std::uint64_t seed) { return sample(p, seed); }

}  // namespace

TEST_CASE("partition names round-trip") {
  for (Partition p : {Partition::full_separable, Partition::bisep_12_3,
                      Partition::bisep_13_2, Partition::bisep_1_23,
                      Partition::unrestricted}) {
    const auto back = partition_from_string(to_string(p));
    REQUIRE(back.has_value());
    REQUIRE(*back == p);
  }
  CHECK(to_string(Partition::bisep_12_3) == "bisep-12|3");
  CHECK(partition_from_string("bisep-12:3") == Partition::bisep_12_3);
  CHECK(partition_from_string("bisep-1_23") == Partition::bisep_1_23);
  CHECK(!partition_from_string("bisep-2|13").has_value());
  CHECK(!partition_from_string("").has_value());
  CHECK(is_biseparable(Partition::bisep_13_2));
  CHECK(!is_biseparable(Partition::full_separable));
  CHECK(!is_biseparable(Partition::unrestricted));
}

TEST_CASE("param_count per class") {
  CHECK(param_count(Partition::full_separable) == 6);
  CHECK(param_count(Partition::bisep_12_3) == 10);
  CHECK(param_count(Partition::bisep_13_2) == 10);
  CHECK(param_count(Partition::bisep_1_23) == 10);
  CHECK(param_count(Partition::unrestricted) == 16);
}

TEST_CASE("decode full-separable matches the explicit product") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> params(6);
    for (double& p : params) p = rng.uniform(-4.0, 4.0);
    const PureState psi = decode({Partition::full_separable, params});

    Vector want(8);
    for (int i = 0; i < 8; ++i) {
      Complex amp = 1.0;
      for (int q = 1; q <= 3; ++q) {
        const double theta = params[2 * (q - 1)];
        const double phi = params[2 * (q - 1) + 1];
        const Complex c0 = std::cos(theta / 2);
        const Complex c1 = std::exp(Complex(0, phi)) * std::sin(theta / 2);
        amp *= oracle::bit3(i, q) ? c1 : c0;
      }
      want(i) = amp;
    }
    REQUIRE((psi.amplitudes() - want).norm() < 1e-12);
  }
}

TEST_CASE("decode respects the declared bipartition") {
  // For each biseparable class the reduced state of the singleton qubit must
  // be pure; for a generic unrestricted state it is not.
  struct Case {
    Partition partition;
    int singleton;
  };
  for (const Case c : {Case{Partition::bisep_12_3, 3}, Case{Partition::bisep_13_2, 2},
                       Case{Partition::bisep_1_23, 1}}) {
    for (int t = 0; t < 100; ++t) {
      const ClassParameters params = random_params(c.partition, 100 * t + 7);
      const PureState psi = decode(params);
      const oracle::Matrix rho =
          psi.amplitudes() * psi.amplitudes().adjoint();
      const oracle::Matrix red = oracle::reduce(rho, {c.singleton});
      REQUIRE(purity(red) > 1.0 - 1e-10);
    }
  }
  const PureState entangled = ghz();
  const oracle::Matrix rho = entangled.amplitudes() * entangled.amplitudes().adjoint();
  for (int q : {1, 2, 3}) CHECK(purity(oracle::reduce(rho, {q})) < 0.51);
}

TEST_CASE("bisep pair amplitudes embed in the right slots") {
  // Pair state |01> on the pair factor, singleton |1>.
  std::vector<double> params(10, 0.0);
  params[2] = 1.0;             // amplitude of |01> on the pair
  params[8] = 3.14159265358979323846;  // theta = pi puts the singleton at |1>

  SUBCASE("12|3: qubits 1,2 carry the pair") {
    const PureState psi = decode({Partition::bisep_12_3, params});
    CHECK(std::abs(psi.amplitude(0b011)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("1|23: qubits 2,3 carry the pair") {
    const PureState psi = decode({Partition::bisep_1_23, params});
    CHECK(std::abs(psi.amplitude(0b101)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("13|2: qubits 1,3 carry the pair, qubit 2 is the singleton") {
    const PureState psi = decode({Partition::bisep_13_2, params});
    CHECK(std::abs(psi.amplitude(0b011)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("decode normalizes by projection and rejects null parameters") {
  std::vector<double> params(16, 0.0);
  params[0] = 2.0;
  params[14] = 2.0;
  const PureState psi = decode({Partition::unrestricted, params});
  CHECK(std::abs(psi.amplitude(0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(psi.amplitude(7) - Complex(1 / std::sqrt(2.0))) < 1e-12);

  CHECK_THROWS_AS(decode({Partition::unrestricted, std::vector<double>(16, 0.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(decode({Partition::unrestricted, std::vector<double>(10, 1.0)}),
                  std::invalid_argument);
}

TEST_CASE("encode inverts decode up to factor phases") {
  for (Partition p : {Partition::full_separable, Partition::bisep_12_3,
                      Partition::bisep_13_2, Partition::bisep_1_23,
                      Partition::unrestricted}) {
    for (int t = 0; t < 60; ++t) {
      const ClassParameters params = random_params(p, 9000 + 31 * t);
      const PureState psi = decode(params);
      const ClassParameters back = encode(psi, p);
      REQUIRE(back.partition == p);
      REQUIRE(back.params.size() == param_count(p));
      REQUIRE(fidelity(decode(back), psi) > 1.0 - 1e-9);
    }
  }
}

TEST_CASE("encode refuses states outside the class") {
  for (Partition p : {Partition::full_separable, Partition::bisep_12_3,
                      Partition::bisep_13_2, Partition::bisep_1_23}) {
    CHECK_THROWS_WITH_AS(encode(ghz(), p), doctest::Contains("factorize"),
                         std::invalid_argument);
  }
  // W state is biseparable across no cut.
  Vector w = Vector::Zero(8);
  w(0b001) = w(0b010) = w(0b100) = 1.0 / std::sqrt(3.0);
  const PureState wstate{w};
  for (Partition p : {Partition::bisep_12_3, Partition::bisep_13_2,
                      Partition::bisep_1_23}) {
    CHECK_THROWS_AS(encode(wstate, p), std::invalid_argument);
  }
  // But a biseparable state is encodable in the unrestricted class.
  CHECK_NOTHROW(encode(sharp_biseparable(), Partition::unrestricted));
}

TEST_CASE("sample is deterministic and in-class") {
  for (Partition p : {Partition::full_separable, Partition::bisep_12_3,
                      Partition::unrestricted}) {
    const ClassParameters a = sample(p, 123);
    const ClassParameters b = sample(p, 123);
    REQUIRE(a.params == b.params);
    const ClassParameters c = sample(p, 124);
    REQUIRE(a.params != c.params);
    CHECK_NOTHROW(encode(decode(a), p));
  }
}

TEST_CASE("named fixtures") {
  SUBCASE("ghz") {
    const PureState g = ghz();
    CHECK(std::abs(g.amplitude(0) - Complex(1 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(g.amplitude(7) - Complex(1 / std::sqrt(2.0))) < 1e-15);
    for (int i = 1; i < 7; ++i) CHECK(std::abs(g.amplitude(i)) == 0.0);
  }
  SUBCASE("sharp biseparable = (|00>+|11>)(|0>+|1>)/2") {
    const PureState s = sharp_biseparable();
    for (int i : {0, 1, 6, 7}) CHECK(std::abs(s.amplitude(i) - Complex(0.5)) < 1e-15);
    for (int i : {2, 3, 4, 5}) CHECK(std::abs(s.amplitude(i)) == 0.0);
    CHECK_NOTHROW(encode(s, Partition::bisep_12_3));
  }
  SUBCASE("basis states") {
    for (int i = 0; i < 8; ++i) {
      const PureState b = basis_state(i);
      CHECK(std::abs(b.amplitude(i) - Complex(1.0)) == 0.0);
    }
    CHECK_THROWS_AS(basis_state(8), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(-1), std::invalid_argument);
  }
}

TEST_CASE("noisy ghz interpolates to the maximally mixed state") {
  const BellOperator m3 = build_mermin();
  for (double v : {0.0, 0.25, 0.5, 0.7075, 1.0}) {
    const DensityMatrix rho = noisy_ghz(v);
    CHECK(std::abs(bell_value(rho, m3) - 4.0 * v) < 1e-12);
  }
  CHECK_THROWS_AS(noisy_ghz(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(noisy_ghz(1.1), std::invalid_argument);
}

TEST_CASE("mix_biseparable forms the biseparable hull") {
  std::vector<std::pair<ClassParameters, double>> parts;
  parts.emplace_back(sample(Partition::bisep_12_3, 1), 0.3);
  parts.emplace_back(sample(Partition::bisep_13_2, 2), 0.3);
  parts.emplace_back(sample(Partition::bisep_1_23, 3), 0.4);
  const DensityMatrix rho = mix_biseparable(parts);

  const BellOperator m3 = build_mermin();
  double direct = 0.0;
  for (const auto& [params, w] : parts)
    direct += w * bell_value(decode(params), m3);
  CHECK(std::abs(bell_value(rho, m3) - direct) < 1e-10);

  SUBCASE("rejects non-biseparable tags") {
    std::vector<std::pair<ClassParameters, double>> bad;
    bad.emplace_back(sample(Partition::unrestricted, 4), 1.0);
    CHECK_THROWS_AS(mix_biseparable(bad), std::invalid_argument);
    bad.clear();
    bad.emplace_back(sample(Partition::full_separable, 4), 1.0);
    CHECK_THROWS_AS(mix_biseparable(bad), std::invalid_argument);
  }
  SUBCASE("weights must form a distribution") {
    std::vector<std::pair<ClassParameters, double>> bad;
    bad.emplace_back(sample(Partition::bisep_12_3, 5), 0.7);
    bad.emplace_back(sample(Partition::bisep_12_3, 6), 0.7);
    CHECK_THROWS_AS(mix_biseparable(bad), std::invalid_argument);
  }
}
