#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "support.h"

namespace staketow {
namespace {

using json = nlohmann::json;
using testing::DataPath;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult Run(const std::string& args) {
  std::string cmd = std::string(STAKETOW_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Data(const std::string& name) { return DataPath(name); }

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("staketow_cli_" + name))
      .string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json LoadSchema(const std::string& name) {
  return json::parse(ReadFile(std::string(STAKETOW_DOCS_DIR) + "/" + name));
}

// Checks the schema keywords used by the shipped schemas: type, enum,
// required, properties, additionalProperties, items, minItems, maxItems,
// minimum, exclusiveMinimum, maximum and local $ref.
bool Validates(const json& doc, const json& schema, const json& root,
               std::string* why) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"];
    const std::string prefix = "#/$defs/";
    REQUIRE(ref.rfind(prefix, 0) == 0);
    return Validates(doc, root["$defs"][ref.substr(prefix.size())], root, why);
  }
  auto fail = [&](const std::string& msg) {
    *why = msg + " in " + doc.dump().substr(0, 80);
    return false;
  };
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == doc;
    if (!found) return fail("value not in enum");
  }
  if (schema.contains("type")) {
    std::string type = schema["type"];
    bool ok = (type == "object" && doc.is_object()) ||
              (type == "array" && doc.is_array()) ||
              (type == "string" && doc.is_string()) ||
              (type == "number" && doc.is_number()) ||
              (type == "integer" && doc.is_number_integer());
    if (!ok) return fail("expected " + type);
  }
  if (doc.is_number()) {
    double x = doc.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
      return fail("below minimum");
    }
    if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
      return fail("above maximum");
    }
    if (schema.contains("exclusiveMinimum") &&
        x <= schema["exclusiveMinimum"].get<double>()) {
      return fail("not above exclusiveMinimum");
    }
  }
  if (doc.is_object()) {
    for (const auto& key : schema.value("required", json::array())) {
      if (!doc.contains(key.get<std::string>())) {
        return fail("missing " + key.get<std::string>());
      }
    }
    const json props = schema.value("properties", json::object());
    for (const auto& [key, value] : doc.items()) {
      if (props.contains(key)) {
        if (!Validates(value, props[key], root, why)) return false;
      } else if (schema.contains("additionalProperties")) {
        const json& extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) return fail("unexpected key " + key);
        } else if (!Validates(value, extra, root, why)) {
          return false;
        }
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") &&
        doc.size() < schema["minItems"].get<size_t>()) {
      return fail("too few items");
    }
    if (schema.contains("maxItems") &&
        doc.size() > schema["maxItems"].get<size_t>()) {
      return fail("too many items");
    }
    if (schema.contains("items")) {
      for (const auto& item : doc) {
        if (!Validates(item, schema["items"], root, why)) return false;
      }
    }
  }
  return true;
}

bool Validates(const json& doc, const json& schema, std::string* why) {
  return Validates(doc, schema, schema, why);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  return lines;
}

bool HasLine(const std::string& text, const std::string& line) {
  for (const auto& l : Lines(text)) {
    if (l == line) return true;
  }
  return false;
}

TEST_CASE("value prints the harmonic payoff") {
  RunResult r = Run("value --graph " + Data("l3.json") + " --lambda 2");
  CHECK(r.exit_code == 0);
  CHECK(Lines(r.out).at(0) == "vertex,lambda,value,method");
  CHECK(HasLine(r.out, "1,2,0.571428571429,closed_form"));
  r = Run("value --graph " + Data("l3.json") + " --lambda 1");
  CHECK(HasLine(r.out, "1,1,0.333333333333,closed_form"));
}

TEST_CASE("value on a general graph uses the decomposition") {
  RunResult r = Run("value --graph " + Data("tgraph.json") +
                    " --lambda 1.2 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc.size() == 5);
  for (const auto& row : doc) CHECK(row["method"] == "decomposition");
}

TEST_CASE("stake on the half ladder") {
  RunResult r = Run("stake --graph " + Data("hladder5.json") +
                    " --vertex 5 --lambda 3 --epsilon 1");
  CHECK(r.exit_code == 0);
  CHECK(HasLine(r.out, "5,3,1,0.2,derivative_formula"));
  for (std::string method : {"closed", "totvar-exact"}) {
    RunResult m = Run("stake --graph " + Data("hladder5.json") +
                      " --vertex 5 --lambda 3 --method " + method);
    CHECK(m.exit_code == 0);
    CHECK(Lines(m.out).at(1).rfind("5,3,1,0.2,", 0) == 0);
  }
}

TEST_CASE("stochastic commands need a seed") {
  CHECK(Run("stake --graph " + Data("l3.json") +
            " --lambda 2 --method totvar-mc --trials 100")
            .exit_code == 2);
  CHECK(Run("totvar --graph " + Data("l3.json") + " --lambda 2 --trials 100")
            .exit_code == 2);
  CHECK(Run("simulate --graph " + Data("l3.json") +
            " --vertex 1 --lambda 2 --trials 100")
            .exit_code == 2);
}

TEST_CASE("input errors exit with code two") {
  CHECK(Run("simulate --graph " + Data("l3.json") +
            " --vertex 1 --lambda 2 --trials 0 --seed 1")
            .exit_code == 2);
  std::string bad = TempPath("bad.json");
  std::ofstream(bad) << "{\"vertices\": [";
  CHECK(Run("value --graph " + bad + " --lambda 1").exit_code == 2);
  CHECK(Run("value --graph " + Data("l3.json")).exit_code == 2);
  CHECK(Run("stake --graph " + Data("tgraph.json") + " --lambda 1")
            .exit_code == 2);
  CHECK(Run("stake --graph " + Data("l3.json") + " --lambda 1 --vertex 0")
            .exit_code == 2);
  CHECK(Run("stake --graph " + Data("l3.json") + " --lambda 1 --vertex zz")
            .exit_code == 2);
  CHECK(Run("nosuchcommand").exit_code == 2);
}

TEST_CASE("saddle on the psi surface") {
  RunResult r = Run("saddle --surface psi --graph " + Data("l3.json") +
                    " --vertex 2 --lambda 2 --epsilon 0.01");
  REQUIRE(r.exit_code == 0);
  auto lines = Lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find(",GlobalSaddle,") != std::string::npos);
  // Candidate (2S, S) with S = 7/15.
  CHECK(lines[1].rfind("psi,2,2,0.01,0.933333333333,0.466666666667,", 0) ==
        0);
}

TEST_CASE("contour writes a grid and a valid sidecar") {
  std::string out = TempPath("contour.csv");
  std::filesystem::remove(out + ".json");
  RunResult r = Run("contour --surface val --graph " + Data("l3.json") +
                    " --vertex 2 --lambda 0.5 --resolution 21 --output " +
                    out);
  REQUIRE(r.exit_code == 0);
  auto lines = Lines(ReadFile(out));
  CHECK(lines.at(0) == "a,b,value");
  CHECK(lines.size() == 1 + 21 * 21);
  json sidecar = json::parse(ReadFile(out + ".json"));
  std::string why;
  CHECK_MESSAGE(Validates(sidecar, LoadSchema("sidecar.schema.json"), &why),
                why);
  CHECK(sidecar["red_curve"].size() == 21);
  CHECK(!sidecar["discontinuities"].empty());

  // Explicit candidate on a non-tree board.
  r = Run("saddle --surface val --graph " + Data("tgraph.json") +
          " --vertex N --lambda 2 --a 0.8 --b 0.4 --resolution 21 "
          "--format json");
  REQUIRE(r.exit_code == 0);
  CHECK(Validates(json::parse(r.out), LoadSchema("sidecar.schema.json"),
                  &why));
  CHECK(Run("saddle --surface val --graph " + Data("tgraph.json") +
            " --vertex N --lambda 2 --resolution 21")
            .exit_code == 2);
}

TEST_CASE("shipped graphs follow the graph schema") {
  json schema = LoadSchema("graph.schema.json");
  for (const auto& entry :
       std::filesystem::directory_iterator(DataPath(""))) {
    if (entry.path().extension() != ".json") continue;
    std::string why;
    INFO(entry.path().string());
    CHECK_MESSAGE(
        Validates(json::parse(ReadFile(entry.path().string())), schema, &why),
        why);
  }
  std::string why;
  CHECK(!Validates(json::parse(R"({"vertices":["a"],"edges":[]})"), schema,
                   &why));
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::string> commands = {
      "simulate --graph " + Data("l3.json") +
          " --vertex 1 --lambda 2 --epsilon 0.2 --trials 2000 --seed 9",
      "totvar --graph " + Data("hladder3.json") +
          " --lambda 0.5 --epsilon 0.1 --trials 500 --seed 4",
      "stake --graph " + Data("essence_figure.json") +
          " --lambda 1.5 --epsilon 0.3 --method totvar-mc --trials 300 "
          "--seed 2 --format json",
      "decompose --graph " + Data("tgraph.json") + " --lambda 0.7,2",
      "poisson --graph " + Data("l3.json") + " --lambda 2 --a 1 --b 1"};
  for (const auto& cmd : commands) {
    INFO(cmd);
    RunResult a = Run(cmd);
    RunResult b = Run(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("simulate summary and trace") {
  std::string trace = TempPath("trace.csv");
  RunResult r = Run("simulate --graph " + Data("l3.json") +
                    " --vertex 1 --lambda 2 --trials 1000 --seed 3 --trace " +
                    trace);
  REQUIRE(r.exit_code == 0);
  auto lines = Lines(r.out);
  CHECK(lines.at(0) ==
        "vertex,lambda,epsilon,mina,maxine,trials,mean_pay,stderr,unfinished,h");
  auto trace_lines = Lines(ReadFile(trace));
  CHECK(trace_lines.at(0) == "step,vertex,fortune-ratio,cumulative-totvar");
  CHECK(trace_lines.at(1) == "0,1,2,0");
  CHECK(trace_lines.size() >= 3);
}

TEST_CASE("poisson saddle") {
  RunResult r = Run("poisson --graph " + Data("l3.json") +
                    " --vertex 1 --lambda 2");
  REQUIRE(r.exit_code == 0);
  // b0 = 7/12 at the vertex two steps from the reward.
  CHECK(Lines(r.out).at(1).rfind("1,2,1.16666666667,0.583333333333,", 0) == 0);
}

}  // namespace
}  // namespace staketow
