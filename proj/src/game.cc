#include "staketow/game.h"

#include <cmath>
#include <limits>
#include <optional>

#include "staketow/errors.h"
#include "staketow/harmonic.h"
#include "staketow/parallel.h"
#include "staketow/stake.h"

namespace staketow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<RootRewardTree> TryTree(const BoundaryPaymentGraph& g) {
  if (!g.IsTree()) return std::nullopt;
  int rewards = 0;
  for (int v : g.boundary_vertices()) {
    double p = g.payment(v);
    if (p == 1.0) {
      ++rewards;
    } else if (p != 0.0) {
      return std::nullopt;
    }
  }
  if (rewards != 1) return std::nullopt;
  try {
    return RootRewardTree(g);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// h(lambda, .) at v and the max / min over its neighbours.
struct LocalValues {
  double at = 0.0;
  double hi = -kInf;
  double lo = kInf;
};

LocalValues Local(const BoundaryPaymentGraph& g, const RootRewardTree* t,
                  double lambda, int v) {
  LocalValues out;
  if (t != nullptr) {
    out.at = HClosedForm(*t, lambda, v);
    for (int u : g.neighbors(v)) {
      double h = HClosedForm(*t, lambda, u);
      out.hi = std::max(out.hi, h);
      out.lo = std::min(out.lo, h);
    }
    return out;
  }
  HarmonicField f = HarmonicValues(g, lambda);
  out.at = f.values[v];
  for (int u : g.neighbors(v)) {
    out.hi = std::max(out.hi, f.values[u]);
    out.lo = std::min(out.lo, f.values[u]);
  }
  return out;
}

void CheckConstrained(const BoundaryPaymentGraph& g, double epsilon,
                      double lambda, int v, double a, double b) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "epsilon must lie in (0,1]");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kMalformedInput, "lambda must be positive");
  }
  if (v < 0 || v >= g.num_vertices() || !g.is_open(v)) {
    throw Error(ErrorCode::kVertexNotOpen, "constrained value needs open v");
  }
  if (!(a >= 0.0 && a * epsilon < lambda && b >= 0.0 && b * epsilon < 1.0)) {
    throw Error(ErrorCode::kStakeOutOfRange,
                "need a in [0, lambda/eps), b in [0, 1/eps)");
  }
}

double WinWeight(double lambda, double a, double b) {
  if (a + b == 0.0) return lambda / (1.0 + lambda);
  return a / (a + b);
}

double PsiImpl(const BoundaryPaymentGraph& g, const RootRewardTree* t,
               double epsilon, double lambda, int v, double a, double b) {
  CheckConstrained(g, epsilon, lambda, v, a, b);
  const double shifted = (lambda - a * epsilon) / (1.0 - b * epsilon);
  const double w = WinWeight(lambda, a, b);
  const LocalValues now = Local(g, t, shifted, v);
  const double base = Local(g, t, lambda, v).at;
  return (now.at - base) / epsilon - now.at + w * now.hi + (1.0 - w) * now.lo;
}

}  // namespace

double ValConstrained(const BoundaryPaymentGraph& g, double epsilon,
                      double lambda, int v, double a, double b) {
  CheckConstrained(g, epsilon, lambda, v, a, b);
  std::optional<RootRewardTree> tree = TryTree(g);
  const RootRewardTree* t = tree ? &*tree : nullptr;
  const double shifted = (lambda - a * epsilon) / (1.0 - b * epsilon);
  const double w = WinWeight(lambda, a, b);
  const LocalValues now = Local(g, t, shifted, v);
  return (1.0 - epsilon) * now.at +
         epsilon * (w * now.hi + (1.0 - w) * now.lo);
}

double Psi(const RootRewardTree& t, double epsilon, double lambda, int v,
           double a, double b) {
  return PsiImpl(t.graph(), &t, epsilon, lambda, v, a, b);
}

double PoissonPhi(const BoundaryPaymentGraph& g, double lambda, int v,
                  double a, double b) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kStakeOutOfRange, "Phi needs a, b > 0");
  }
  if (v < 0 || v >= g.num_vertices() || !g.is_open(v)) {
    throw Error(ErrorCode::kVertexNotOpen, "Phi needs an open vertex");
  }
  std::optional<RootRewardTree> tree = TryTree(g);
  const RootRewardTree* t = tree ? &*tree : nullptr;
  const LocalValues now = Local(g, t, lambda, v);
  double deriv;
  if (t != nullptr) {
    deriv = DhDlambda(*t, lambda, v);
  } else {
    const double step = 1e-5 * lambda;
    deriv = (Local(g, t, lambda + step, v).at -
             Local(g, t, lambda - step, v).at) / (2.0 * step);
  }
  const double w = a / (a + b);
  return -now.at - (a - b * lambda) * deriv + w * now.hi + (1.0 - w) * now.lo;
}

std::pair<double, double> PoissonSaddle(const RootRewardTree& t,
                                        double lambda, int v) {
  const double b0 = Stake(t, 1.0, lambda, v).value;
  return {lambda * b0, b0};
}

Strategy ConformingMaxine(std::shared_ptr<const RootRewardTree> t,
                          double epsilon) {
  Strategy s;
  s.name = "conforming";
  s.stake = [t, epsilon](const StateOfPlay& st, CounterRng&) {
    const double mu = st.fortune_ratio;
    if (mu == 0.0) return 0.0;
    if (std::isinf(mu)) return 1.0;
    return mu * epsilon * StakeClosedForm(*t, mu, st.counter);
  };
  s.move = [t](const StateOfPlay& st, CounterRng&) {
    return t->parent(st.counter);
  };
  return s;
}

Strategy ConformingMina(std::shared_ptr<const RootRewardTree> t,
                        double epsilon) {
  WalkPolicy theta = DefaultPolicy(*t);
  return ConformingMina(std::move(t), epsilon, std::move(theta));
}

Strategy ConformingMina(std::shared_ptr<const RootRewardTree> t,
                        double epsilon, WalkPolicy theta) {
  Strategy s;
  s.name = "conforming";
  s.stake = [t, epsilon](const StateOfPlay& st, CounterRng&) {
    const double mu = st.fortune_ratio;
    if (mu == 0.0) return 0.5;
    if (std::isinf(mu)) return 0.0;
    return epsilon * StakeClosedForm(*t, mu, st.counter);
  };
  auto choice = std::make_shared<const std::vector<int>>(std::move(theta.choice));
  s.move = [choice](const StateOfPlay& st, CounterRng&) {
    return (*choice)[st.counter];
  };
  return s;
}

Strategy ScaleFirstTurnStake(Strategy base, double factor) {
  base.name += "+scaled_first_turn";
  StakeRule inner = std::move(base.stake);
  base.stake = [inner, factor](const StateOfPlay& st, CounterRng& rng) {
    double x = inner(st, rng);
    return st.turn == 1 ? factor * x : x;
  };
  return base;
}

Strategy GoForBrokeFirstTurn(Strategy base, bool maxine) {
  base.name += "+go_for_broke";
  StakeRule inner = std::move(base.stake);
  base.stake = [inner, maxine](const StateOfPlay& st, CounterRng& rng) {
    if (st.turn == 1) return maxine ? st.fortune_ratio : 1.0;
    return inner(st, rng);
  };
  return base;
}

Strategy NeverStake(Strategy base) {
  base.name += "+never_stake";
  base.stake = [](const StateOfPlay&, CounterRng&) { return 0.0; };
  return base;
}

Strategy JitterStake(Strategy base, double lo, double hi) {
  base.name += "+jitter";
  StakeRule inner = std::move(base.stake);
  base.stake = [inner, lo, hi](const StateOfPlay& st, CounterRng& rng) {
    return inner(st, rng) * (lo + (hi - lo) * rng.Uniform());
  };
  return base;
}

long DefaultMaxTurns(const BoundaryPaymentGraph& g, double epsilon) {
  const double n = g.num_vertices();
  return static_cast<long>(std::ceil(50.0 * n * n / epsilon));
}

GameOutcome SimulateGame(const BoundaryPaymentGraph& g, double epsilon,
                         double lambda, int v, const Strategy& mina,
                         const Strategy& maxine, std::uint64_t seed,
                         long max_turns, std::uint64_t stream,
                         bool record_trace) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "epsilon must lie in (0,1]");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kMalformedInput, "lambda must be positive");
  }
  if (v < 0 || v >= g.num_vertices()) {
    throw Error(ErrorCode::kMalformedInput, "start vertex out of range");
  }
  if (max_turns <= 0) max_turns = DefaultMaxTurns(g, epsilon);
  CounterRng coin(seed, stream);
  CounterRng max_rng(seed ^ 0x5bd1e995a5a5a5a5ULL, stream);
  CounterRng min_rng(seed ^ 0xc2b2ae3d27d4eb4fULL, stream);

  GameOutcome out;
  int x = v;
  double fortune = lambda;
  if (g.is_boundary(x)) {
    out.pay = g.payment(x);
    out.finished = true;
    return out;
  }
  for (long turn = 1; turn <= max_turns; ++turn) {
    const StateOfPlay state{fortune, x, turn};
    double a = maxine.stake(state, max_rng);
    double b = mina.stake(state, min_rng);
    const bool unbounded = std::isinf(fortune);
    if (!(a >= 0.0) || !std::isfinite(a) || (!unbounded && a > fortune * (1 + 1e-12))) {
      throw Error(ErrorCode::kIllegalStake, "Maxine stake outside budget");
    }
    const double mina_budget = unbounded ? 0.0 : 1.0;
    if (!(b >= 0.0) || b > mina_budget + 1e-12) {
      throw Error(ErrorCode::kIllegalStake, "Mina stake outside budget");
    }
    if (!unbounded) a = std::min(a, fortune);
    b = std::min(b, mina_budget);

    TurnRecord rec;
    rec.turn = turn;
    rec.fortune_before = fortune;
    rec.maxine_stake = a;
    rec.mina_stake = b;
    rec.counter_before = x;

    const double max_reserve = unbounded ? kInf : fortune - a;
    const double min_reserve = mina_budget - b;
    double next = fortune;
    if (max_reserve == 0.0 && min_reserve == 0.0) {
      rec.reset = true;  // status quo: fortunes restored next turn
    } else if (min_reserve == 0.0) {
      next = kInf;
    } else {
      next = max_reserve / min_reserve;
    }

    if (coin.Uniform() < epsilon) {
      double p;
      if (a + b == 0.0) {
        p = unbounded ? 1.0 : fortune / (1.0 + fortune);
      } else {
        p = a / (a + b);
      }
      const bool maxine_wins = coin.Uniform() < p;
      const StateOfPlay post{next, x, turn};
      int y = maxine_wins ? maxine.move(post, max_rng)
                          : mina.move(post, min_rng);
      if (y < 0 || y >= g.num_vertices() || !g.Adjacent(x, y)) {
        throw Error(ErrorCode::kIllegalMove, "nominated vertex not adjacent");
      }
      rec.moved = true;
      rec.winner = maxine_wins ? 1 : -1;
      x = y;
    }
    fortune = next;
    rec.counter_after = x;
    rec.fortune_after = fortune;
    if (record_trace) out.trace.push_back(rec);
    out.turns = turn;
    if (g.is_boundary(x)) {
      out.pay = g.payment(x);
      out.finished = true;
      return out;
    }
  }
  out.pay = 1.0;
  return out;
}

MeanEstimate McMeanPayoff(const BoundaryPaymentGraph& g, double epsilon,
                          double lambda, int v, const Strategy& mina,
                          const Strategy& maxine, long trials,
                          std::uint64_t seed, long max_turns) {
  if (trials < 1) throw Error(ErrorCode::kMalformedInput, "trials < 1");
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
      GameOutcome o = SimulateGame(g, epsilon, lambda, v, mina, maxine, seed,
                                   max_turns, i, false);
      p.sum += o.pay;
      p.sum_sq += o.pay * o.pay;
      if (!o.finished) ++p.unfinished;
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

}  // namespace staketow
