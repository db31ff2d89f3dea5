#ifndef STAKETOW_TOOLS_COMMANDS_H_
#define STAKETOW_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace staketow::cli {

enum class Format { kCsv, kJson };

// Flags shared by every command; each command reads the ones it needs.
struct RunConfig {
  std::string graph_path;
  std::vector<double> lambdas;
  double epsilon = 1.0;
  std::optional<std::string> vertex;
  int resolution = 201;
  long trials = 0;
  std::optional<std::uint64_t> seed;
  Format format = Format::kCsv;
  std::string output;
  std::string sidecar;
  std::string trace;
  std::string surface = "psi";
  std::string method = "derivative";
  std::optional<double> a_min, a_max, b_min, b_max;
  std::optional<double> a, b;
  std::string mina = "conforming";
  std::string maxine = "conforming";
  double scale = 1.5;
  long max_turns = 0;
};

// Exit codes.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNumericError = 3;
constexpr int kContractError = 4;

int CmdValue(const RunConfig& c, std::ostream& out);
int CmdStake(const RunConfig& c, std::ostream& out);
int CmdDecompose(const RunConfig& c, std::ostream& out);
int CmdTotvar(const RunConfig& c, std::ostream& out);
int CmdContour(const RunConfig& c, std::ostream& out);
int CmdSaddle(const RunConfig& c, std::ostream& out);
int CmdSimulate(const RunConfig& c, std::ostream& out);
int CmdPoisson(const RunConfig& c, std::ostream& out);

// 12 significant digits.
std::string FormatReal(double x);

}  // namespace staketow::cli

#endif  // STAKETOW_TOOLS_COMMANDS_H_
