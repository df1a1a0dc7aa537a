#include "mermin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mermin {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

SimplexResult minimize_simplex(const ObjectiveFn& f, std::span<const double> start,
                               const SimplexOptions& options) {
  const int n = static_cast<int>(start.size());
  if (n < 1) throw std::invalid_argument("minimize_simplex: empty start vector");
  if (options.max_evaluations < n + 1)
    throw std::invalid_argument("minimize_simplex: evaluation budget too small");

  SimplexResult result;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  // n+1 vertices: the start point plus one step along each coordinate.
  std::vector<std::vector<double>> verts(n + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) verts[i][i - 1] += options.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = eval(verts[i]);

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  double best_seen = *std::min_element(vals.begin(), vals.end());
  result.accepted.push_back(best_seen);

  auto record = [&](double v) {
    if (v < best_seen) {
      best_seen = v;
      result.accepted.push_back(v);
    }
  };

  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int lo = order[0];
    const int hi = order[n];
    const int next_hi = order[n - 1];

    if (vals[hi] - vals[lo] <= options.tolerance) break;

    // centroid of all vertices except the worst
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (int j = 0; j < n; ++j) centroid[j] += verts[i][j];
    }
    for (int j = 0; j < n; ++j) centroid[j] /= n;

    for (int j = 0; j < n; ++j) xr[j] = centroid[j] + kReflect * (centroid[j] - verts[hi][j]);
    const double fr = eval(xr);

    if (fr < vals[lo]) {
      for (int j = 0; j < n; ++j) xe[j] = centroid[j] + kExpand * (xr[j] - centroid[j]);
      const double fe = eval(xe);
      if (fe < fr) {
        verts[hi] = xe;
        vals[hi] = fe;
      } else {
        verts[hi] = xr;
        vals[hi] = fr;
      }
    } else if (fr < vals[next_hi]) {
      verts[hi] = xr;
      vals[hi] = fr;
    } else {
      // contraction, outside or inside of the worst vertex
      const bool outside = fr < vals[hi];
      const std::vector<double>& towards = outside ? xr : verts[hi];
      for (int j = 0; j < n; ++j) xc[j] = centroid[j] + kContract * (towards[j] - centroid[j]);
      const double fc = eval(xc);
      if (fc < std::min(fr, vals[hi])) {
        verts[hi] = xc;
        vals[hi] = fc;
      } else {
        // shrink everything towards the best vertex
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (int j = 0; j < n; ++j)
            verts[i][j] = verts[lo][j] + kShrink * (verts[i][j] - verts[lo][j]);
          vals[i] = eval(verts[i]);
          if (evals >= options.max_evaluations) break;
        }
      }
    }
    record(*std::min_element(vals.begin(), vals.end()));
  }

  const int lo = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  result.x = verts[lo];
  result.value = vals[lo];
  result.evaluations = evals;
  return result;
}

}  // namespace mermin
