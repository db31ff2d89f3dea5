#include "commands.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <variant>

#include "json.hpp"
#include "staketow/errors.h"
#include "staketow/game.h"
#include "staketow/graph.h"
#include "staketow/harmonic.h"
#include "staketow/saddle.h"
#include "staketow/stake.h"
#include "staketow/tree.h"
#include "staketow/walk.h"

namespace staketow::cli {

using json = nlohmann::ordered_json;

std::string FormatReal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0.0;  // No negative zero.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

json Real(double x) {
  if (!std::isfinite(x)) return FormatReal(x);
  return std::strtod(FormatReal(x).c_str(), nullptr);
}

using Cell = std::variant<std::string, double, long>;

// Rows with a fixed header, written as CSV or as a JSON array of objects.
class Table {
 public:
  explicit Table(std::vector<std::string> header)
      : header_(std::move(header)) {}
  void Add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  void Write(Format f, std::ostream& out) const {
    if (f == Format::kCsv) {
      for (size_t k = 0; k < header_.size(); ++k) {
        out << (k ? "," : "") << header_[k];
      }
      out << "\n";
      for (const auto& row : rows_) {
        for (size_t k = 0; k < row.size(); ++k) {
          out << (k ? "," : "") << Text(row[k]);
        }
        out << "\n";
      }
      return;
    }
    json doc = json::array();
    for (const auto& row : rows_) {
      json obj = json::object();
      for (size_t k = 0; k < row.size(); ++k) obj[header_[k]] = Json(row[k]);
      doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << "\n";
  }

 private:
  static std::string Text(const Cell& c) {
    if (auto* s = std::get_if<std::string>(&c)) return *s;
    if (auto* d = std::get_if<double>(&c)) return FormatReal(*d);
    return std::to_string(std::get<long>(c));
  }
  static json Json(const Cell& c) {
    if (auto* s = std::get_if<std::string>(&c)) return *s;
    if (auto* d = std::get_if<double>(&c)) return Real(*d);
    return std::get<long>(c);
  }

  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kMalformedInput, what);
}

void RequireLambdas(const RunConfig& c) {
  Require(!c.lambdas.empty(), "--lambda is required");
  for (double l : c.lambdas) {
    Require(l > 0 && std::isfinite(l), "--lambda values must be positive");
  }
}

double SingleLambda(const RunConfig& c) {
  RequireLambdas(c);
  Require(c.lambdas.size() == 1, "this command takes a single --lambda");
  return c.lambdas[0];
}

void RequireEpsilon(const RunConfig& c) {
  Require(c.epsilon > 0 && c.epsilon <= 1, "--epsilon must lie in (0,1]");
}

// Requested vertex, or every open vertex.
std::vector<int> Vertices(const BoundaryPaymentGraph& g, const RunConfig& c) {
  if (c.vertex) return {g.Index(*c.vertex)};
  return g.open_vertices();
}

int OneVertex(const BoundaryPaymentGraph& g, const RunConfig& c) {
  Require(c.vertex.has_value(), "--vertex is required");
  return g.Index(*c.vertex);
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  Require(static_cast<bool>(f), "cannot write " + path);
  f << text;
}

// Surface, ranges and candidate for contour and saddle.
struct SurfaceSetup {
  std::function<double(double, double)> f;
  Range a_range;
  Range b_range;
  std::pair<double, double> candidate;
  std::vector<std::pair<double, double>> corners;
};

SurfaceSetup MakeSurface(const BoundaryPaymentGraph& g, const RunConfig& c,
                         std::shared_ptr<std::optional<RootRewardTree>> tree,
                         double lambda, int v) {
  const double eps = c.epsilon;
  if (!g.is_open(v)) {
    throw Error(ErrorCode::kVertexNotOpen, g.id(v) + " is not open");
  }
  try {
    tree->emplace(g);
  } catch (const Error&) {
    if (c.surface == "psi") throw;
  }
  SurfaceSetup s;
  std::optional<std::pair<double, double>> candidate;
  if (c.surface == "psi") {
    const RootRewardTree* t = &**tree;
    s.f = [t, eps, lambda, v](double a, double b) {
      return Psi(*t, eps, lambda, v, a, b);
    };
    s.a_range = {0.0, std::min(2 * lambda, lambda / eps * (1 - 1e-9))};
    s.b_range = {0.0, std::min(2.0, (1 - 1e-9) / eps)};
    const double st = Stake(*t, 1.0, lambda, v).value;
    candidate = {lambda * st, st};
  } else if (c.surface == "val") {
    s.f = [&g, eps, lambda, v](double a, double b) {
      return ValConstrained(g, eps, lambda, v, a, b);
    };
    s.a_range = {0.0, lambda / eps * (1 - 1e-9)};
    s.b_range = {0.0, (1 - 1e-9) / eps};
    s.corners = {{lambda / eps, 1 / eps}};
    if (*tree) {
      const double st = Stake(**tree, 1.0, lambda, v).value;
      candidate = {lambda * st, st};
    }
  } else if (c.surface == "phi") {
    s.f = [&g, lambda, v](double a, double b) {
      return PoissonPhi(g, lambda, v, a, b);
    };
    s.a_range = {1e-3 * lambda, 2 * lambda};
    s.b_range = {1e-3, 2.0};
    if (*tree) candidate = PoissonSaddle(**tree, lambda, v);
  } else {
    throw Error(ErrorCode::kMalformedInput,
                "--surface must be psi, val or phi");
  }
  if (c.a_min) s.a_range.lo = *c.a_min;
  if (c.a_max) s.a_range.hi = *c.a_max;
  if (c.b_min) s.b_range.lo = *c.b_min;
  if (c.b_max) s.b_range.hi = *c.b_max;
  if (c.a && c.b) candidate = {*c.a, *c.b};
  Require(candidate.has_value(),
          "this graph is not a root-reward tree; pass --a and --b");
  s.candidate = *candidate;
  return s;
}

json Sidecar(const RunConfig& c, const BoundaryPaymentGraph& g, int v,
             double lambda, const SaddleReport& r) {
  json doc;
  doc["surface"] = c.surface;
  doc["vertex"] = g.id(v);
  doc["lambda"] = Real(lambda);
  doc["epsilon"] = Real(c.epsilon);
  doc["resolution"] = static_cast<long>(r.a_grid.size());
  doc["candidate"] = {{"a", Real(r.a0)},
                      {"b", Real(r.b0)},
                      {"value", Real(r.candidate_value)}};
  doc["classification"] = SaddleClassName(r.classification);
  doc["grid_minimax"] = {{"a", Real(r.a_grid[r.maximin_a])},
                         {"b", Real(r.b_grid[r.minimax_b])}};
  json red = json::array();
  for (size_t j = 0; j < r.b_grid.size(); ++j) {
    json as = json::array();
    for (int i : r.red_curve[j]) as.push_back(Real(r.a_grid[i]));
    red.push_back({{"b", Real(r.b_grid[j])}, {"a", as}});
  }
  json blue = json::array();
  for (size_t i = 0; i < r.a_grid.size(); ++i) {
    json bs = json::array();
    for (int j : r.blue_curve[i]) bs.push_back(Real(r.b_grid[j]));
    blue.push_back({{"a", Real(r.a_grid[i])}, {"b", bs}});
  }
  doc["red_curve"] = std::move(red);
  doc["blue_curve"] = std::move(blue);
  json disc = json::array();
  for (const auto& d : r.discontinuities) {
    disc.push_back(
        {{"a", Real(d.a)}, {"b", Real(d.b)}, {"spread", Real(d.spread)}});
  }
  doc["discontinuities"] = std::move(disc);
  return doc;
}

struct Scan {
  BoundaryPaymentGraph graph;
  int vertex;
  double lambda;
  SaddleReport report;
};

Scan RunScan(const RunConfig& c) {
  RequireEpsilon(c);
  const double lambda = SingleLambda(c);
  BoundaryPaymentGraph g = LoadGraph(c.graph_path);
  const int v = OneVertex(g, c);
  auto tree = std::make_shared<std::optional<RootRewardTree>>();
  SurfaceSetup s = MakeSurface(g, c, tree, lambda, v);
  SaddleOptions options;
  options.probe_corners = s.corners;
  SaddleReport r = SaddleScan(s.f, s.a_range, s.b_range, c.resolution,
                              s.candidate, options);
  return {std::move(g), v, lambda, std::move(r)};
}

Strategy BuildStrategy(const std::string& kind, bool maxine,
                       std::shared_ptr<const RootRewardTree> t, double eps,
                       double scale) {
  Strategy base = maxine ? ConformingMaxine(t, eps) : ConformingMina(t, eps);
  if (kind == "conforming") return base;
  if (kind == "scaled") return ScaleFirstTurnStake(std::move(base), scale);
  if (kind == "never") return NeverStake(std::move(base));
  if (kind == "jitter") return JitterStake(std::move(base), 0.5, 1.5);
  if (kind == "broke") return GoForBrokeFirstTurn(std::move(base), maxine);
  throw Error(ErrorCode::kMalformedInput, "unknown strategy " + kind);
}

}  // namespace

int CmdValue(const RunConfig& c, std::ostream& out) {
  RequireLambdas(c);
  BoundaryPaymentGraph g = LoadGraph(c.graph_path);
  Table table({"vertex", "lambda", "value", "method"});
  for (double lambda : c.lambdas) {
    HarmonicField f = HarmonicValues(g, lambda);
    for (int v = 0; v < g.num_vertices(); ++v) {
      table.Add({g.id(v), lambda, f.values[v],
                 std::string(FieldMethodName(f.method))});
    }
  }
  table.Write(c.format, out);
  return kOk;
}

int CmdStake(const RunConfig& c, std::ostream& out) {
  RequireLambdas(c);
  RequireEpsilon(c);
  RootRewardTree t = AsRootRewardTree(LoadGraph(c.graph_path));
  const bool mc = c.method == "totvar-mc";
  if (mc) {
    Require(c.seed.has_value(), "--seed is required for totvar-mc");
    Require(c.trials >= 1, "--trials must be at least 1");
  }
  std::vector<std::string> header = {"vertex", "lambda", "epsilon", "stake",
                                     "method"};
  if (mc) header.push_back("stderr");
  Table table(header);
  for (double lambda : c.lambdas) {
    for (int v : Vertices(t.graph(), c)) {
      StakeResult r;
      if (c.method == "derivative") {
        r = Stake(t, c.epsilon, lambda, v);
      } else if (c.method == "closed") {
        t.CheckOpen(v);
        r.value = c.epsilon * StakeClosedForm(t, lambda, v);
        r.method = StakeMethod::kClosedForm;
      } else if (c.method == "totvar-exact") {
        r = StakeViaTotvar(t, c.epsilon, lambda, v, TotvarMode::kExact);
      } else if (mc) {
        TotvarParams p;
        p.trials = c.trials;
        p.seed = *c.seed;
        r = StakeViaTotvar(t, c.epsilon, lambda, v, TotvarMode::kMonteCarlo,
                           p);
      } else {
        throw Error(ErrorCode::kMalformedInput,
                    "--method must be derivative, closed, totvar-exact or "
                    "totvar-mc");
      }
      std::vector<Cell> row = {t.id(v), lambda, c.epsilon, r.value,
                               std::string(StakeMethodName(r.method))};
      if (mc) row.push_back(r.stderr_of_value);
      table.Add(std::move(row));
    }
  }
  table.Write(c.format, out);
  return kOk;
}

int CmdDecompose(const RunConfig& c, std::ostream& out) {
  RequireLambdas(c);
  BoundaryPaymentGraph g = LoadGraph(c.graph_path);
  Table table({"lambda", "index", "low", "high", "slope", "vertices"});
  for (double lambda : c.lambdas) {
    Decomposition d = PsDecompose(g, 1.0 / lambda);
    for (size_t k = 0; k < d.paths.size(); ++k) {
      const auto& p = d.paths[k];
      std::string ids;
      for (int v : p.vertices) ids += (ids.empty() ? "" : " ") + g.id(v);
      table.Add({lambda, static_cast<long>(k), g.id(p.vertices.front()),
                 g.id(p.vertices.back()), p.slope, ids});
    }
  }
  table.Write(c.format, out);
  return kOk;
}

int CmdTotvar(const RunConfig& c, std::ostream& out) {
  RequireLambdas(c);
  RequireEpsilon(c);
  Require(c.trials >= 0, "--trials must be nonnegative");
  const bool mc = c.trials > 0;
  if (mc) Require(c.seed.has_value(), "--seed is required with --trials");
  RootRewardTree t = AsRootRewardTree(LoadGraph(c.graph_path));
  WalkPolicy theta = DefaultPolicy(t);
  std::vector<std::string> header = {"vertex", "lambda", "epsilon",
                                     "exact_totvar", "derivative_identity"};
  if (mc) {
    header.insert(header.end(), {"mc_mean", "mc_stderr", "unfinished"});
  }
  Table table(header);
  for (double lambda : c.lambdas) {
    std::vector<double> w = ExpectedTotvarAll(t, c.epsilon, lambda, theta);
    for (int v : Vertices(t.graph(), c)) {
      t.CheckOpen(v);
      const double scale = (lambda + 1) * (lambda + 1) / c.epsilon;
      std::vector<Cell> row = {t.id(v), lambda, c.epsilon, w[v],
                               scale * DhDlambda(t, lambda, v)};
      if (mc) {
        MeanEstimate e = MonteCarloTotvar(t, c.epsilon, lambda, theta, v,
                                          c.trials, *c.seed);
        row.insert(row.end(), {e.mean, e.stderr_of_mean, e.unfinished});
      }
      table.Add(std::move(row));
    }
  }
  table.Write(c.format, out);
  return kOk;
}

int CmdContour(const RunConfig& c, std::ostream& out) {
  Scan s = RunScan(c);
  const SaddleReport& r = s.report;
  if (c.format == Format::kCsv) {
    Table table({"a", "b", "value"});
    for (size_t i = 0; i < r.a_grid.size(); ++i) {
      for (size_t j = 0; j < r.b_grid.size(); ++j) {
        table.Add({r.a_grid[i], r.b_grid[j], r.values[i][j]});
      }
    }
    table.Write(c.format, out);
  } else {
    json doc;
    json as = json::array(), bs = json::array(), vals = json::array();
    for (double a : r.a_grid) as.push_back(Real(a));
    for (double b : r.b_grid) bs.push_back(Real(b));
    for (const auto& row : r.values) {
      json jr = json::array();
      for (double x : row) jr.push_back(Real(x));
      vals.push_back(std::move(jr));
    }
    doc["a"] = std::move(as);
    doc["b"] = std::move(bs);
    doc["values"] = std::move(vals);
    out << doc.dump() << "\n";
  }
  std::string sidecar = c.sidecar;
  if (sidecar.empty() && !c.output.empty()) sidecar = c.output + ".json";
  if (!sidecar.empty()) {
    WriteFile(sidecar, Sidecar(c, s.graph, s.vertex, s.lambda, r).dump(2) +
                           "\n");
  }
  return kOk;
}

int CmdSaddle(const RunConfig& c, std::ostream& out) {
  Scan s = RunScan(c);
  const SaddleReport& r = s.report;
  if (c.format == Format::kJson) {
    out << Sidecar(c, s.graph, s.vertex, s.lambda, r).dump(2) << "\n";
    return kOk;
  }
  Table table({"surface", "vertex", "lambda", "epsilon", "a0", "b0",
               "candidate_value", "classification", "minimax_a", "minimax_b",
               "discontinuities"});
  table.Add({c.surface, s.graph.id(s.vertex), s.lambda, c.epsilon, r.a0, r.b0,
             r.candidate_value,
             std::string(SaddleClassName(r.classification)),
             r.a_grid[r.maximin_a], r.b_grid[r.minimax_b],
             static_cast<long>(r.discontinuities.size())});
  table.Write(c.format, out);
  return kOk;
}

int CmdSimulate(const RunConfig& c, std::ostream& out) {
  Require(c.trials >= 1, "--trials must be at least 1");
  Require(c.seed.has_value(), "--seed is required");
  RequireEpsilon(c);
  const double lambda = SingleLambda(c);
  Require(c.max_turns >= 0, "--max-turns must be nonnegative");
  auto t = std::make_shared<const RootRewardTree>(
      AsRootRewardTree(LoadGraph(c.graph_path)));
  const BoundaryPaymentGraph& g = t->graph();
  const int v = OneVertex(g, c);
  Strategy mina = BuildStrategy(c.mina, false, t, c.epsilon, c.scale);
  Strategy maxine = BuildStrategy(c.maxine, true, t, c.epsilon, c.scale);
  MeanEstimate m = McMeanPayoff(g, c.epsilon, lambda, v, mina, maxine,
                                c.trials, *c.seed, c.max_turns);
  Table table({"vertex", "lambda", "epsilon", "mina", "maxine", "trials",
               "mean_pay", "stderr", "unfinished", "h"});
  table.Add({g.id(v), lambda, c.epsilon, mina.name, maxine.name, c.trials,
             m.mean, m.stderr_of_mean, m.unfinished,
             g.is_open(v) ? HClosedForm(*t, lambda, v) : g.payment(v)});
  table.Write(c.format, out);
  if (!c.trace.empty()) {
    // Trajectory 0 of the same seed; TotVar accumulates Delta at lambda.
    GameOutcome o = SimulateGame(g, c.epsilon, lambda, v, mina, maxine,
                                 *c.seed, c.max_turns, 0, true);
    Table trace({"step", "vertex", "fortune-ratio", "cumulative-totvar"});
    double totvar = 0.0;
    trace.Add({0L, g.id(v), lambda, totvar});
    for (const auto& rec : o.trace) {
      if (g.is_open(rec.counter_before)) {
        totvar += Delta(*t, lambda, rec.counter_before);
      }
      trace.Add({rec.turn, g.id(rec.counter_after), rec.fortune_after,
                 totvar});
    }
    std::ofstream f(c.trace);
    Require(static_cast<bool>(f), "cannot write " + c.trace);
    trace.Write(Format::kCsv, f);
  }
  return kOk;
}

int CmdPoisson(const RunConfig& c, std::ostream& out) {
  RequireLambdas(c);
  RootRewardTree t = AsRootRewardTree(LoadGraph(c.graph_path));
  const bool point = c.a.has_value() && c.b.has_value();
  std::vector<std::string> header = {"vertex", "lambda", "a0", "b0",
                                     "phi_at_saddle"};
  if (point) header.insert(header.end(), {"a", "b", "phi"});
  Table table(header);
  for (double lambda : c.lambdas) {
    for (int v : Vertices(t.graph(), c)) {
      auto [a0, b0] = PoissonSaddle(t, lambda, v);
      std::vector<Cell> row = {t.id(v), lambda, a0, b0,
                               PoissonPhi(t.graph(), lambda, v, a0, b0)};
      if (point) {
        row.insert(row.end(),
                   {*c.a, *c.b, PoissonPhi(t.graph(), lambda, v, *c.a, *c.b)});
      }
      table.Add(std::move(row));
    }
  }
  table.Write(c.format, out);
  return kOk;
}

}  // namespace staketow::cli
