#include "staketow/walk.h"

#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "staketow/errors.h"
#include "staketow/harmonic.h"
#include "staketow/parallel.h"
#include "staketow/rng.h"

namespace staketow {

namespace {

void CheckParams(double epsilon, double lambda) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "epsilon must lie in (0,1]");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kMalformedInput, "lambda must be positive");
  }
}

void CheckPolicy(const RootRewardTree& t, const WalkPolicy& theta) {
  if (static_cast<int>(theta.choice.size()) != t.num_vertices()) {
    throw Error(ErrorCode::kMalformedInput, "policy size mismatch");
  }
  for (int v : t.graph().open_vertices()) {
    int c = theta.choice[v];
    if (c < 0 || t.parent(c) != v ||
        t.down_distance(c) + 1 != t.down_distance(v)) {
      throw Error(ErrorCode::kMalformedInput,
                  "policy leaves V_-(" + t.id(v) + ")");
    }
  }
}

}  // namespace

WalkPolicy DefaultPolicy(const RootRewardTree& t) {
  WalkPolicy p;
  p.choice.assign(t.num_vertices(), -1);
  for (int v : t.graph().open_vertices()) p.choice[v] = MinChildren(t, v)[0];
  return p;
}

std::vector<WalkPolicy> EnumeratePolicies(const RootRewardTree& t,
                                          std::size_t limit) {
  const auto& open = t.graph().open_vertices();
  std::vector<std::vector<int>> options;
  std::size_t total = 1;
  for (int v : open) {
    options.push_back(MinChildren(t, v));
    total *= options.back().size();
    if (total > limit) {
      throw Error(ErrorCode::kIndexOutOfRange, "too many stationary policies");
    }
  }
  std::vector<WalkPolicy> out;
  std::vector<std::size_t> digit(open.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    WalkPolicy p;
    p.choice.assign(t.num_vertices(), -1);
    for (std::size_t i = 0; i < open.size(); ++i) {
      p.choice[open[i]] = options[i][digit[i]];
    }
    out.push_back(std::move(p));
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (++digit[i] < options[i].size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

long DefaultMaxSteps(const RootRewardTree& t, double epsilon) {
  const double n = t.num_vertices();
  return static_cast<long>(std::ceil(50.0 * n * n / epsilon));
}

WalkSampler::WalkSampler(const RootRewardTree& t, double epsilon,
                         double lambda, const WalkPolicy& theta)
    : t_(t), epsilon_(epsilon), up_(lambda / (1.0 + lambda)) {
  CheckParams(epsilon, lambda);
  CheckPolicy(t, theta);
  down_ = theta.choice;
  delta_.assign(t.num_vertices(), 0.0);
  for (int v : t.graph().open_vertices()) delta_[v] = Delta(t, lambda, v);
}

WalkTrace WalkSampler::Sample(int v, std::uint64_t seed, std::uint64_t stream,
                              long max_steps, bool record_path) const {
  t_.CheckOpen(v);
  if (max_steps <= 0) max_steps = DefaultMaxSteps(t_, epsilon_);
  CounterRng rng(seed, stream);
  WalkTrace trace;
  if (record_path) trace.path.push_back(v);
  int x = v;
  for (long step = 1; step <= max_steps; ++step) {
    trace.totvar += delta_[x];
    double u = rng.Uniform();
    if (u < epsilon_) {
      x = u < epsilon_ * up_ ? t_.parent(x) : down_[x];
    }
    if (record_path) trace.path.push_back(x);
    if (!t_.is_open(x)) {
      trace.finish_time = step;
      break;
    }
  }
  return trace;
}

WalkTrace SimulateWalk(const RootRewardTree& t, double epsilon, double lambda,
                       const WalkPolicy& theta, int v, std::uint64_t seed,
                       long max_steps) {
  return WalkSampler(t, epsilon, lambda, theta).Sample(v, seed, 0, max_steps);
}

MeanEstimate MonteCarloTotvar(const RootRewardTree& t, double epsilon,
                              double lambda, const WalkPolicy& theta, int v,
                              long trials, std::uint64_t seed,
                              long max_steps) {
  if (trials < 1) throw Error(ErrorCode::kMalformedInput, "trials < 1");
  WalkSampler sampler(t, epsilon, lambda, theta);
  t.CheckOpen(v);
  constexpr long kChunk = 1024;
  const long chunks = (trials + kChunk - 1) / kChunk;
  struct Partial {
    double sum = 0.0, sum_sq = 0.0;
    long unfinished = 0;
  };
  std::vector<Partial> parts(chunks);
  ParallelFor(chunks, [&](long c) {
    Partial& p = parts[c];
    const long end = std::min(trials, (c + 1) * kChunk);
    for (long i = c * kChunk; i < end; ++i) {
      WalkTrace tr = sampler.Sample(v, seed, i, max_steps, false);
      p.sum += tr.totvar;
      p.sum_sq += tr.totvar * tr.totvar;
      if (!tr.finish_time) ++p.unfinished;
    }
  });
  MeanEstimate est;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    est.unfinished += p.unfinished;
  }
  est.trials = trials;
  est.mean = sum / trials;
  if (trials > 1) {
    double var = (sum_sq - trials * est.mean * est.mean) / (trials - 1);
    est.stderr_of_mean = std::sqrt(std::max(var, 0.0) / trials);
  }
  return est;
}

std::vector<double> ExpectedTotvarAll(const RootRewardTree& t, double epsilon,
                                      double lambda, const WalkPolicy& theta) {
  CheckParams(epsilon, lambda);
  CheckPolicy(t, theta);
  const auto& open = t.graph().open_vertices();
  const int m = static_cast<int>(open.size());
  std::vector<int> slot(t.num_vertices(), -1);
  for (int i = 0; i < m; ++i) slot[open[i]] = i;
  const double up = lambda / (1.0 + lambda);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    int u = open[i];
    a(i, i) += epsilon;
    if (int p = slot[t.parent(u)]; p >= 0) a(i, p) -= epsilon * up;
    if (int c = slot[theta.choice[u]]; c >= 0) a(i, c) -= epsilon * (1 - up);
    rhs(i) = Delta(t, lambda, u);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-15)) {
    throw Error(ErrorCode::kSingularSystem, "TotVar system is singular");
  }
  Eigen::VectorXd w = lu.solve(rhs);
  std::vector<double> out(t.num_vertices(), 0.0);
  for (int i = 0; i < m; ++i) out[open[i]] = w(i);
  return out;
}

double ExpectedTotvarExact(const RootRewardTree& t, double epsilon,
                           double lambda, const WalkPolicy& theta, int v) {
  t.CheckOpen(v);
  return ExpectedTotvarAll(t, epsilon, lambda, theta)[v];
}

KernelCheckReport EssenceKernelCheck(const RootRewardTree& t, double epsilon,
                                     double lambda) {
  CheckParams(epsilon, lambda);
  EssenceMap ess = Essence(t);
  const RootRewardTree& e = ess.essence_tree;
  const double up = epsilon * lambda / (1.0 + lambda);
  const double down = epsilon / (1.0 + lambda);
  KernelCheckReport report;
  for (int v : t.graph().open_vertices()) {
    int w = ess.phi[v];
    if (!e.is_open(w)) {
      report.ok = false;
      report.mismatches.push_back(t.id(v) + ": image is not open");
      continue;
    }
    std::vector<int> minus = MinChildren(e, w);
    if (minus.size() != 1) {
      report.ok = false;
      report.mismatches.push_back(e.id(w) + ": V_- not a singleton");
      continue;
    }
    std::map<int, double> target = {{w, 1.0 - epsilon}};
    target[e.parent(w)] += up;
    target[minus[0]] += down;
    for (int c : MinChildren(t, v)) {
      std::map<int, double> pushed = {{ess.phi[v], 1.0 - epsilon}};
      pushed[ess.phi[t.parent(v)]] += up;
      pushed[ess.phi[c]] += down;
      if (pushed != target) {
        report.ok = false;
        report.mismatches.push_back(t.id(v) + " via " + t.id(c));
      }
    }
  }
  return report;
}

FiniteHorizonResult FiniteHorizonRemainder(const RootRewardTree& t,
                                           double epsilon, double lambda,
                                           const WalkPolicy& theta, int v,
                                           int n) {
  CheckParams(epsilon, lambda);
  CheckPolicy(t, theta);
  t.CheckOpen(v);
  if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "n must be >= 1");
  const int size = t.num_vertices();
  const auto& open = t.graph().open_vertices();
  const double up = lambda / (1.0 + lambda);
  std::vector<double> delta(size, 0.0), deriv(size, 0.0);
  for (int u : open) {
    delta[u] = Delta(t, lambda, u);
    deriv[u] = DhDlambda(t, lambda, u);
  }
  FiniteHorizonResult r;
  std::vector<double> mu(size, 0.0), next(size, 0.0);
  mu[v] = 1.0;
  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int u : open) {
      if (mu[u] == 0.0) continue;
      r.totvar_n += mu[u] * delta[u];
      next[u] += (1.0 - epsilon) * mu[u];
      next[t.parent(u)] += epsilon * up * mu[u];
      next[theta.choice[u]] += epsilon * (1.0 - up) * mu[u];
    }
    for (int u = 0; u < size; ++u) {
      if (!t.is_open(u)) next[u] = 0.0;
    }
    mu.swap(next);
  }
  for (int u : open) r.remainder += deriv[u] * mu[u];
  r.mu_n = mu;
  const double scale = (lambda + 1.0) * (lambda + 1.0);
  r.rhs = epsilon / scale * r.totvar_n + r.remainder;
  r.dh_dlambda = deriv[v];
  r.stake_n = delta[v] / (r.totvar_n + scale / epsilon * r.remainder);
  return r;
}

}  // namespace staketow
