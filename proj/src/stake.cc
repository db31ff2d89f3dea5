#include "staketow/stake.h"

#include <cmath>

#include "staketow/errors.h"
#include "staketow/harmonic.h"

namespace staketow {

const char* StakeMethodName(StakeMethod m) {
  switch (m) {
    case StakeMethod::kDerivativeFormula: return "derivative_formula";
    case StakeMethod::kClosedForm: return "closed_form";
    case StakeMethod::kTotvarExact: return "totvar_exact";
    case StakeMethod::kTotvarMc: return "totvar_mc";
  }
  return "unknown";
}

namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "epsilon must lie in (0,1]");
  }
}

}  // namespace

StakeResult Stake(const RootRewardTree& t, double epsilon, double lambda,
                  int v) {
  CheckEpsilon(epsilon);
  t.CheckOpen(v);
  StakeResult r{epsilon, lambda, v, 0.0, StakeMethod::kDerivativeFormula};
  const double s = (lambda + 1.0) * (lambda + 1.0);
  r.value = epsilon * Delta(t, lambda, v) / (s * DhDlambda(t, lambda, v));
  return r;
}

double StakeClosedForm(const RootRewardTree& t, double lambda, int v) {
  t.CheckOpen(v);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kMalformedInput, "lambda must be positive");
  }
  const auto& pairs = t.journey_data(v).pairs;
  const int gap_k = pairs.back().span - pairs.back().depth;
  if (lambda == 1.0) {
    int total = 0;
    for (const auto& p : pairs) total += p.depth;
    return 1.0 / (double(gap_k) * total);
  }
  const double L = std::log(lambda);
  if (lambda > 1.0 && L > 0.05) {
    // Multiply through by lambda^m, m the least gap, so nothing underflows.
    int m = gap_k;
    for (const auto& p : pairs) m = std::min(m, p.span - p.depth);
    auto scaled = [&](int l) {  // lambda^m Psi(lambda, l)
      return std::exp((m - l) * L) / -std::expm1(-l * L);
    };
    double sum = 0.0;
    for (const auto& p : pairs) {
      const int a = p.span - p.depth;
      sum += a * scaled(a) - p.span * scaled(p.span);
    }
    return std::expm1(L) * scaled(gap_k) / ((lambda + 1.0) * sum);
  }
  double sum = 0.0;
  for (const auto& p : pairs) {
    sum += PsiDifference(lambda, p.span - p.depth, p.span);
  }
  // (lambda - 1) Psi(lambda, l) = expm1(L) / expm1(l L).
  return std::expm1(L) / std::expm1(gap_k * L) / ((lambda + 1.0) * sum);
}

double StakeLine(double epsilon, double lambda, int n, int i) {
  if (n < 2 || i < 1 || i > n - 1) {
    throw Error(ErrorCode::kIndexOutOfRange, "need n >= 2, 1 <= i <= n-1");
  }
  CheckEpsilon(epsilon);
  if (lambda == 1.0) return epsilon / (double(i) * (n - i));
  const double L = std::log(lambda);
  const double ratio = std::expm1(i * L) / std::expm1(n * L);
  const double inner = (lambda + 1.0) / (lambda - 1.0) * i *
                       (1.0 - n * ratio / i);
  return epsilon / inner;
}

AsymptoteReport Asymptotes(const RootRewardTree& t, int v) {
  t.CheckOpen(v);
  const auto& pairs = t.journey_data(v).pairs;
  int d_plus = 0;
  int m = -1;
  int count = 0;
  for (const auto& p : pairs) {
    d_plus += p.depth;
    const int gap = p.span - p.depth;
    if (m < 0 || gap < m) {
      m = gap;
      count = 1;
    } else if (gap == m) {
      ++count;
    }
  }
  const int d_minus = pairs.back().span - pairs.back().depth;
  AsymptoteReport r;
  r.low_limit = 1.0 / d_plus;
  r.lambda_one = 1.0 / (double(d_minus) * d_plus);
  r.high_exponent = d_minus - m;
  r.high_coefficient = 1.0 / (double(count) * m);
  r.min_gap = m;
  r.argmin_count = count;
  return r;
}

StakeResult StakeViaTotvar(const RootRewardTree& t, double epsilon,
                           double lambda, int v, TotvarMode mode,
                           const TotvarParams& params) {
  CheckEpsilon(epsilon);
  t.CheckOpen(v);
  const WalkPolicy theta = DefaultPolicy(t);
  const double delta = Delta(t, lambda, v);
  StakeResult r{epsilon, lambda, v, 0.0, StakeMethod::kTotvarExact};
  if (mode == TotvarMode::kExact) {
    r.value = delta / ExpectedTotvarExact(t, epsilon, lambda, theta, v);
    return r;
  }
  r.method = StakeMethod::kTotvarMc;
  MeanEstimate est = MonteCarloTotvar(t, epsilon, lambda, theta, v,
                                      params.trials, params.seed,
                                      params.max_steps);
  r.value = delta / est.mean;
  r.stderr_of_value = delta * est.stderr_of_mean / (est.mean * est.mean);
  return r;
}

}  // namespace staketow
