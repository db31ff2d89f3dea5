#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "staketow/errors.h"

namespace {

using staketow::ErrorCode;
using namespace staketow::cli;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kSingularSystem:
      return kNumericError;
    case ErrorCode::kIllegalStake:
    case ErrorCode::kIllegalMove:
      return kContractError;
    default:
      return kInputError;
  }
}

void AddGraph(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--graph", c.graph_path, "Graph JSON file")
      ->required()
      ->check(CLI::ExistingFile);
}

void AddLambda(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--lambda", c.lambdas, "Fortune ratio(s)")
      ->required()
      ->delimiter(',');
}

void AddCommon(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::kCsv},
                                        {"json", Format::kJson}}));
  cmd->add_option("--output", c.output, "Write output to this file");
}

void AddScanOptions(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--vertex", c.vertex, "Starting vertex id")->required();
  cmd->add_option("--epsilon", c.epsilon, "Turn probability");
  cmd->add_option("--surface", c.surface, "psi, val or phi")
      ->check(CLI::IsMember({"psi", "val", "phi"}));
  cmd->add_option("--resolution", c.resolution, "Grid points per axis");
  cmd->add_option("--a-min", c.a_min);
  cmd->add_option("--a-max", c.a_max);
  cmd->add_option("--b-min", c.b_min);
  cmd->add_option("--b-max", c.b_max);
  cmd->add_option("--a", c.a, "Candidate Maxine stake");
  cmd->add_option("--b", c.b, "Candidate Mina stake");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stake-governed tug of war on root-reward trees"};
  app.require_subcommand(1);
  RunConfig c;

  auto* value = app.add_subcommand("value", "Harmonic payoff h_lambda");
  AddGraph(value, c);
  AddLambda(value, c);
  AddCommon(value, c);

  auto* stake = app.add_subcommand("stake", "Stake function");
  AddGraph(stake, c);
  AddLambda(stake, c);
  AddCommon(stake, c);
  stake->add_option("--epsilon", c.epsilon, "Turn probability");
  stake->add_option("--vertex", c.vertex, "Vertex id (default: all open)");
  stake->add_option("--method", c.method, "Evaluation method")
      ->check(CLI::IsMember(
          {"derivative", "closed", "totvar-exact", "totvar-mc"}));
  stake->add_option("--trials", c.trials, "Monte Carlo trials");
  stake->add_option("--seed", c.seed, "Random seed");

  auto* decompose = app.add_subcommand("decompose", "Path decomposition");
  AddGraph(decompose, c);
  AddLambda(decompose, c);
  AddCommon(decompose, c);

  auto* totvar = app.add_subcommand("totvar", "Expected total variation");
  AddGraph(totvar, c);
  AddLambda(totvar, c);
  AddCommon(totvar, c);
  totvar->add_option("--epsilon", c.epsilon, "Turn probability");
  totvar->add_option("--vertex", c.vertex, "Vertex id (default: all open)");
  totvar->add_option("--trials", c.trials, "Monte Carlo trials (0: exact)");
  totvar->add_option("--seed", c.seed, "Random seed");

  auto* contour = app.add_subcommand("contour", "Payoff surface grid");
  AddGraph(contour, c);
  AddLambda(contour, c);
  AddCommon(contour, c);
  AddScanOptions(contour, c);
  contour->add_option("--sidecar", c.sidecar, "Sidecar JSON path");

  auto* saddle = app.add_subcommand("saddle", "Saddle classification");
  AddGraph(saddle, c);
  AddLambda(saddle, c);
  AddCommon(saddle, c);
  AddScanOptions(saddle, c);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo game play");
  AddGraph(simulate, c);
  AddLambda(simulate, c);
  AddCommon(simulate, c);
  simulate->add_option("--vertex", c.vertex, "Starting vertex")->required();
  simulate->add_option("--epsilon", c.epsilon, "Turn probability");
  simulate->add_option("--trials", c.trials, "Number of games")->required();
  simulate->add_option("--seed", c.seed, "Random seed")->required();
  simulate->add_option("--mina", c.mina, "Mina strategy")
      ->check(CLI::IsMember({"conforming", "scaled", "never", "jitter",
                             "broke"}));
  simulate->add_option("--maxine", c.maxine, "Maxine strategy")
      ->check(CLI::IsMember({"conforming", "scaled", "never", "jitter",
                             "broke"}));
  simulate->add_option("--scale", c.scale, "First-turn factor for scaled");
  simulate->add_option("--max-turns", c.max_turns, "Turn cap (0: default)");
  simulate->add_option("--trace", c.trace, "Write trajectory 0 as CSV");

  auto* poisson = app.add_subcommand("poisson", "Poisson-game saddle");
  AddGraph(poisson, c);
  AddLambda(poisson, c);
  AddCommon(poisson, c);
  poisson->add_option("--vertex", c.vertex, "Vertex id (default: all open)");
  poisson->add_option("--a", c.a, "Maxine rate");
  poisson->add_option("--b", c.b, "Mina rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  std::ostringstream out;
  int code = kOk;
  try {
    if (*value) code = CmdValue(c, out);
    if (*stake) code = CmdStake(c, out);
    if (*decompose) code = CmdDecompose(c, out);
    if (*totvar) code = CmdTotvar(c, out);
    if (*contour) code = CmdContour(c, out);
    if (*saddle) code = CmdSaddle(c, out);
    if (*simulate) code = CmdSimulate(c, out);
    if (*poisson) code = CmdPoisson(c, out);
  } catch (const staketow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (c.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(c.output);
    if (!f) {
      std::cerr << "error: cannot write " << c.output << "\n";
      return kInputError;
    }
    f << out.str();
  }
  return code;
}
