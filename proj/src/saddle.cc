#include "staketow/saddle.h"

#include <algorithm>
#include <cmath>

#include "staketow/errors.h"
#include "staketow/parallel.h"

namespace staketow {

const char* SaddleClassName(SaddleClass c) {
  switch (c) {
    case SaddleClass::kGlobalSaddle: return "GlobalSaddle";
    case SaddleClass::kLocalOnly: return "LocalOnly";
    case SaddleClass::kNoSaddle: return "NoSaddle";
  }
  return "unknown";
}

namespace {

std::vector<double> Grid(Range r, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = i == n - 1 ? r.hi : r.lo + (r.hi - r.lo) * i / (n - 1);
  }
  return g;
}

int Nearest(const std::vector<double>& grid, double x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(grid.size()); ++i) {
    if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) best = i;
  }
  return best;
}

bool Close(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y));
}

}  // namespace

SaddleReport SaddleScan(const std::function<double(double, double)>& surface,
                        Range a_range, Range b_range, int resolution,
                        std::pair<double, double> candidate,
                        const SaddleOptions& options) {
  if (resolution < 11) {
    throw Error(ErrorCode::kMalformedInput, "resolution must be >= 11");
  }
  if (!(a_range.lo < a_range.hi && b_range.lo < b_range.hi)) {
    throw Error(ErrorCode::kMalformedInput, "empty range");
  }
  auto [a0, b0] = candidate;
  if (a0 < a_range.lo || a0 > a_range.hi || b0 < b_range.lo ||
      b0 > b_range.hi) {
    throw Error(ErrorCode::kMalformedInput, "candidate outside the ranges");
  }
  const int n = resolution;
  SaddleReport r;
  r.a_grid = Grid(a_range, n);
  r.b_grid = Grid(b_range, n);
  r.a0 = a0;
  r.b0 = b0;
  r.values.assign(n, std::vector<double>(n));
  ParallelFor(n, [&](long i) {
    for (int j = 0; j < n; ++j) r.values[i][j] = surface(r.a_grid[i], r.b_grid[j]);
  });

  r.red_curve.assign(n, {});
  std::vector<double> upper(n);
  for (int j = 0; j < n; ++j) {
    double best = r.values[0][j];
    for (int i = 1; i < n; ++i) best = std::max(best, r.values[i][j]);
    upper[j] = best;
    for (int i = 0; i < n; ++i) {
      if (Close(r.values[i][j], best)) r.red_curve[j].push_back(i);
    }
  }
  r.blue_curve.assign(n, {});
  std::vector<double> lower(n);
  for (int i = 0; i < n; ++i) {
    double best = r.values[i][0];
    for (int j = 1; j < n; ++j) best = std::min(best, r.values[i][j]);
    lower[i] = best;
    for (int j = 0; j < n; ++j) {
      if (Close(r.values[i][j], best)) r.blue_curve[i].push_back(j);
    }
  }
  r.minimax_b = static_cast<int>(
      std::min_element(upper.begin(), upper.end()) - upper.begin());
  r.maximin_a = static_cast<int>(
      std::max_element(lower.begin(), lower.end()) - lower.begin());

  // Candidate row and column.
  r.candidate_value = surface(a0, b0);
  std::vector<double> row(n), column(n);
  for (int k = 0; k < n; ++k) {
    row[k] = surface(r.a_grid[k], b0);
    column[k] = surface(a0, r.b_grid[k]);
  }
  const double tol = options.tolerance;
  auto holds = [&](int k) {
    return row[k] <= r.candidate_value + tol &&
           column[k] >= r.candidate_value - tol;
  };
  const int ia = Nearest(r.a_grid, a0);
  const int jb = Nearest(r.b_grid, b0);
  bool local = true;
  for (int d = -2; d <= 2; ++d) {
    int i = ia + d, j = jb + d;
    if (i >= 0 && i < n && row[i] > r.candidate_value + tol) local = false;
    if (j >= 0 && j < n && column[j] < r.candidate_value - tol) local = false;
  }
  bool global = local;
  for (int k = 0; k < n && global; ++k) global = holds(k);
  r.classification = global  ? SaddleClass::kGlobalSaddle
                     : local ? SaddleClass::kLocalOnly
                             : SaddleClass::kNoSaddle;

  const double wa = a_range.hi - a_range.lo;
  const double wb = b_range.hi - b_range.lo;
  for (auto [ca, cb] : options.probe_corners) {
    // Step inward from the corner.
    const double sa = ca >= a_range.lo + wa / 2 ? -1.0 : 1.0;
    const double sb = cb >= b_range.lo + wb / 2 ? -1.0 : 1.0;
    const double t = 1e-7;
    double lo = INFINITY, hi = -INFINITY;
    for (auto [x, y] : {std::pair{1.0, 0.1}, std::pair{1.0, 1.0},
                        std::pair{0.1, 1.0}}) {
      double f = surface(ca + sa * t * x * wa, cb + sb * t * y * wb);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    if (hi - lo > options.probe_tolerance) {
      r.discontinuities.push_back({ca, cb, hi - lo});
    }
  }
  return r;
}

}  // namespace staketow
