#ifndef STAKETOW_WALK_H_
#define STAKETOW_WALK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "staketow/tree.h"

namespace staketow {

// Stationary theta: choice[v] is a member of V_-(v) for open v, -1 elsewhere.
struct WalkPolicy {
  std::vector<int> choice;
};

// First member of V_-(v) everywhere.
WalkPolicy DefaultPolicy(const RootRewardTree& t);
// Every stationary policy; throws kIndexOutOfRange above `limit`.
std::vector<WalkPolicy> EnumeratePolicies(const RootRewardTree& t,
                                          std::size_t limit = 10000);

struct WalkTrace {
  std::vector<int> path;
  // Index of the first boundary entry; empty when the step cap was hit.
  std::optional<long> finish_time;
  double totvar = 0.0;
};

long DefaultMaxSteps(const RootRewardTree& t, double epsilon);

// Precomputed one-step kernel of the lazy biased walk.
class WalkSampler {
 public:
  WalkSampler(const RootRewardTree& t, double epsilon, double lambda,
              const WalkPolicy& theta);

  // Trajectory number `stream` under `seed`. max_steps <= 0 means default.
  WalkTrace Sample(int v, std::uint64_t seed, std::uint64_t stream,
                   long max_steps, bool record_path = true) const;

 private:
  const RootRewardTree& t_;
  double epsilon_;
  double up_;  // lambda / (1 + lambda)
  std::vector<int> down_;
  std::vector<double> delta_;
};

WalkTrace SimulateWalk(const RootRewardTree& t, double epsilon, double lambda,
                       const WalkPolicy& theta, int v, std::uint64_t seed,
                       long max_steps = 0);

struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long trials = 0;
  long unfinished = 0;
};

// Sample mean of TotVar over trajectories 0..trials-1.
MeanEstimate MonteCarloTotvar(const RootRewardTree& t, double epsilon,
                              double lambda, const WalkPolicy& theta, int v,
                              long trials, std::uint64_t seed,
                              long max_steps = 0);

// w solving w = Delta + (1-eps) w + eps q w(u_+) + eps (1-q) w(theta u);
// indexed by vertex, zero on the boundary.
std::vector<double> ExpectedTotvarAll(const RootRewardTree& t, double epsilon,
                                      double lambda, const WalkPolicy& theta);
double ExpectedTotvarExact(const RootRewardTree& t, double epsilon,
                           double lambda, const WalkPolicy& theta, int v);

struct KernelCheckReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

KernelCheckReport EssenceKernelCheck(const RootRewardTree& t, double epsilon,
                                     double lambda);

struct FiniteHorizonResult {
  double totvar_n = 0.0;
  // Sum over open w of h'(w) mu_n(w).
  double remainder = 0.0;
  // Indexed by vertex; zero off the open set.
  std::vector<double> mu_n;
  // eps/(lambda+1)^2 totvar_n + remainder, to compare with h'(v).
  double rhs = 0.0;
  double dh_dlambda = 0.0;
  // Delta / (totvar_n + (lambda+1)^2/eps remainder).
  double stake_n = 0.0;
};

FiniteHorizonResult FiniteHorizonRemainder(const RootRewardTree& t,
                                           double epsilon, double lambda,
                                           const WalkPolicy& theta, int v,
                                           int n);

}  // namespace staketow

#endif  // STAKETOW_WALK_H_
