#ifndef STAKETOW_STAKE_H_
#define STAKETOW_STAKE_H_

#include <cstdint>

#include "staketow/tree.h"
#include "staketow/walk.h"

namespace staketow {

enum class StakeMethod { kDerivativeFormula, kClosedForm, kTotvarExact, kTotvarMc };
const char* StakeMethodName(StakeMethod m);

struct StakeResult {
  double epsilon = 1.0;
  double lambda = 1.0;
  int vertex = -1;
  double value = 0.0;
  StakeMethod method = StakeMethod::kDerivativeFormula;
  // Monte Carlo only.
  double stderr_of_value = 0.0;
};

struct AsymptoteReport {
  double low_limit = 0.0;
  double lambda_one = 0.0;
  int high_exponent = 0;
  double high_coefficient = 0.0;
  // d_-^min and |J|.
  int min_gap = 0;
  int argmin_count = 0;
};

// eps Delta / ((lambda+1)^2 h').
StakeResult Stake(const RootRewardTree& t, double epsilon, double lambda,
                  int v);

// Journey-data formula at eps = 1.
double StakeClosedForm(const RootRewardTree& t, double lambda, int v);

// Vertex i of L_n rooted at n.
double StakeLine(double epsilon, double lambda, int n, int i);

AsymptoteReport Asymptotes(const RootRewardTree& t, int v);

enum class TotvarMode { kExact, kMonteCarlo };

struct TotvarParams {
  long trials = 100000;
  std::uint64_t seed = 0;
  long max_steps = 0;
};

// Delta / E TotVar, with the default stationary policy.
StakeResult StakeViaTotvar(const RootRewardTree& t, double epsilon,
                           double lambda, int v, TotvarMode mode,
                           const TotvarParams& params = {});

}  // namespace staketow

#endif  // STAKETOW_STAKE_H_
