#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "mermin/simplex.hpp"

using mermin::minimize_simplex;
using mermin::SimplexOptions;
using mermin::SimplexResult;

TEST_CASE("quadratic bowl") {
  const std::vector<double> target{1.5, -2.0, 0.25};
  const auto f = [&](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += (x[i] - target[i]) * (x[i] - target[i]);
    return s;
  };
  const std::vector<double> start{0.0, 0.0, 0.0};
  const SimplexResult r = minimize_simplex(f, start, {});
  REQUIRE(r.value < 1e-9);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(r.x[i] - target[i]) < 1e-4);
}

TEST_CASE("rosenbrock valley") {
  const auto f = [](std::span<const double> x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  SimplexOptions opt;
  opt.max_evaluations = 20000;
  opt.tolerance = 1e-14;
  const std::vector<double> start{-1.2, 1.0};
  const SimplexResult r = minimize_simplex(f, start, opt);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-3);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-3);
}

TEST_CASE("accepted trace is nonincreasing and budget is respected") {
  const auto f = [](std::span<const double> x) {
    return std::cos(3.0 * x[0]) + x[0] * x[0] + 0.5 * std::sin(7.0 * x[1]);
  };
  SimplexOptions opt;
  opt.max_evaluations = 300;
  const std::vector<double> start{2.0, -1.0};
  const SimplexResult r = minimize_simplex(f, start, opt);
  CHECK(r.evaluations <= opt.max_evaluations + 4);  // one trailing iteration
  REQUIRE(!r.accepted.empty());
  for (std::size_t i = 1; i < r.accepted.size(); ++i)
    REQUIRE(r.accepted[i] <= r.accepted[i - 1]);
  CHECK(r.value == r.accepted.back());
}

TEST_CASE("degenerate budgets are rejected") {
  const auto f = [](std::span<const double> x) { return x[0] * x[0]; };
  SimplexOptions opt;
  opt.max_evaluations = 1;
  const std::vector<double> start{1.0};
  CHECK_THROWS_AS(minimize_simplex(f, start, opt), std::invalid_argument);
  CHECK_THROWS_AS(minimize_simplex(f, {}, {}), std::invalid_argument);
}

TEST_CASE("result is deterministic") {
  const auto f = [](std::span<const double> x) {
    return std::pow(x[0] - 0.3, 4) + std::abs(x[1]);
  };
  const std::vector<double> start{5.0, 5.0};
  const SimplexResult a = minimize_simplex(f, start, {});
  const SimplexResult b = minimize_simplex(f, start, {});
  CHECK(a.value == b.value);
  CHECK(a.x == b.x);
  CHECK(a.evaluations == b.evaluations);
}
