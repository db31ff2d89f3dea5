#ifndef STAKETOW_GAME_H_
#define STAKETOW_GAME_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "staketow/graph.h"
#include "staketow/rng.h"
#include "staketow/tree.h"
#include "staketow/walk.h"

namespace staketow {

// Value of the game in which the first-turn stakes are (a eps, b eps) and
// both players conform afterwards: h(lambda,v) + eps Psi.
double ValConstrained(const BoundaryPaymentGraph& g, double epsilon,
                      double lambda, int v, double a, double b);

// Psi = (Val - h(lambda,v)) / eps, evaluated without the subtraction.
double Psi(const RootRewardTree& t, double epsilon, double lambda, int v,
           double a, double b);

// Formal drift -h - (a - b lambda) h' + w h(v_+) + (1-w) h(v_-), w = a/(a+b).
double PoissonPhi(const BoundaryPaymentGraph& g, double lambda, int v,
                  double a, double b);

// (a0, b0) = (lambda b0, Stake(1,lambda,v)).
std::pair<double, double> PoissonSaddle(const RootRewardTree& t,
                                        double lambda, int v);

// Game state seen by the players at the start of a turn (or after the
// stakes are deducted, for move rules). fortune_ratio may be +inf.
struct StateOfPlay {
  double fortune_ratio = 1.0;
  int counter = -1;
  long turn = 1;
};

using StakeRule = std::function<double(const StateOfPlay&, CounterRng&)>;
using MoveRule = std::function<int(const StateOfPlay&, CounterRng&)>;

struct Strategy {
  std::string name;
  StakeRule stake;
  MoveRule move;
};

// Maxine: stake mu Stake(eps,mu,w), move to w_+.
Strategy ConformingMaxine(std::shared_ptr<const RootRewardTree> t,
                          double epsilon);
// Mina: stake Stake(eps,mu,w), move to theta(w).
Strategy ConformingMina(std::shared_ptr<const RootRewardTree> t,
                        double epsilon);
Strategy ConformingMina(std::shared_ptr<const RootRewardTree> t,
                        double epsilon, WalkPolicy theta);

// Variants of a base strategy.
Strategy ScaleFirstTurnStake(Strategy base, double factor);
// Stakes the whole fortune at turn 1: lambda for Maxine, 1 for Mina.
Strategy GoForBrokeFirstTurn(Strategy base, bool maxine);
Strategy NeverStake(Strategy base);
// Stake uniform on [lo, hi] times the conforming stake, every turn.
Strategy JitterStake(Strategy base, double lo, double hi);

struct TurnRecord {
  long turn = 0;
  double fortune_before = 0.0;
  double maxine_stake = 0.0;
  double mina_stake = 0.0;
  bool moved = false;
  // +1 Maxine, -1 Mina, 0 no move.
  int winner = 0;
  int counter_before = -1;
  int counter_after = -1;
  double fortune_after = 0.0;
  bool reset = false;
};

struct GameOutcome {
  double pay = 0.0;
  bool finished = false;
  long turns = 0;
  std::vector<TurnRecord> trace;
};

long DefaultMaxTurns(const BoundaryPaymentGraph& g, double epsilon);

// Plays one game on stream `stream` of `seed`. max_turns <= 0 means default.
GameOutcome SimulateGame(const BoundaryPaymentGraph& g, double epsilon,
                         double lambda, int v, const Strategy& mina,
                         const Strategy& maxine, std::uint64_t seed,
                         long max_turns = 0, std::uint64_t stream = 0,
                         bool record_trace = true);

MeanEstimate McMeanPayoff(const BoundaryPaymentGraph& g, double epsilon,
                          double lambda, int v, const Strategy& mina,
                          const Strategy& maxine, long trials,
                          std::uint64_t seed, long max_turns = 0);

}  // namespace staketow

#endif  // STAKETOW_GAME_H_
