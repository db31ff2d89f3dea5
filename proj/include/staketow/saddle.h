#ifndef STAKETOW_SADDLE_H_
#define STAKETOW_SADDLE_H_

#include <functional>
#include <string>
#include <vector>

namespace staketow {

enum class SaddleClass { kGlobalSaddle, kLocalOnly, kNoSaddle };
const char* SaddleClassName(SaddleClass c);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

// A corner (a, b) whose one-sided limits along three inward directions
// disagree by `spread`.
struct Discontinuity {
  double a = 0.0;
  double b = 0.0;
  double spread = 0.0;
};

// Grid scan of F(a, b); a is the maximizing (Maxine) coordinate and b the
// minimizing (Mina) one, so a saddle has F(a, b0) <= F(a0, b0) <= F(a0, b).
struct SaddleReport {
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  // values[i][j] = F(a_grid[i], b_grid[j]).
  std::vector<std::vector<double>> values;
  // red_curve[j]: indices i maximizing F(., b_j); blue_curve[i]: indices j
  // minimizing F(a_i, .).
  std::vector<std::vector<int>> red_curve;
  std::vector<std::vector<int>> blue_curve;
  double a0 = 0.0;
  double b0 = 0.0;
  double candidate_value = 0.0;
  SaddleClass classification = SaddleClass::kNoSaddle;
  std::vector<Discontinuity> discontinuities;
  // Pure grid minimax: argmin_j max_i and argmax_i min_j.
  int minimax_b = 0;
  int maximin_a = 0;
};

struct SaddleOptions {
  double tolerance = 1e-9;
  // Corners to probe for direction-dependent limits.
  std::vector<std::pair<double, double>> probe_corners;
  double probe_tolerance = 1e-6;
};

SaddleReport SaddleScan(const std::function<double(double, double)>& surface,
                        Range a_range, Range b_range, int resolution,
                        std::pair<double, double> candidate,
                        const SaddleOptions& options = {});

}  // namespace staketow

#endif  // STAKETOW_SADDLE_H_
