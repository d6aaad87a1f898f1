#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "schwarz_atlas/cli.hpp"
#include "schwarz_atlas/report.hpp"

using namespace schwarz_atlas;
using report::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_json(std::vector<std::string> a) {
  a.push_back("--format");
  a.push_back("json");
  return a;
}

const std::vector<std::vector<std::string>>& json_commands() {
  static const std::vector<std::vector<std::string>> cmds{
      {"roots", "dump", "--type", "E", "--rank", "6"},
      {"gauss", "monodromy", "--alpha", "1/84", "--beta", "13/84", "--gamma", "1/2"},
      {"gauss", "schwarz-triangle", "--kappa", "1/2", "--lambda", "1/3", "--mu", "1/7"},
      {"gauss", "pullback", "--k1", "1/3", "--k2", "1/4", "--lambda", "1/5"},
      {"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "7", "--depth", "4"},
      {"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "4"},
      {"torus", "flatness", "--type", "D", "--rank", "4", "--k", "3/10", "--seed", "42"},
      {"torus", "monodromy", "--type", "A", "--rank", "2", "--k", "1/4", "--root", "1"},
      {"torus", "form", "--type", "A", "--rank", "2", "--k", "1/4"},
      {"schwarz", "enumerate", "--p-max", "12"},
      {"schwarz", "check", "--type", "A", "--rank", "7", "--p", "3"},
      {"schwarz", "dm", "--n", "5", "--p", "4"},
      {"schwarz", "dm-scan", "--n-max", "4", "--p-max", "12"},
  };
  return cmds;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"schwarz", "enumerate", "--p-max", "10"}).code == 0);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"schwarz", "frobnicate"}).code == 2);
  CHECK(run({"schwarz", "enumerate", "--bogus"}).code == 2);
  CHECK(run({"gauss", "monodromy", "--alpha", "1/0", "--beta", "1/3", "--gamma", "1/2"}).code == 2);
  CHECK(run({"gauss", "monodromy", "--alpha", "x", "--beta", "1/3", "--gamma", "1/2"}).code == 2);
  CHECK(run({"gauss", "monodromy", "--alpha", "0.5", "--beta", "1/3", "--gamma", "1/2"}).code == 2);
  // log case at zero
  CHECK(run({"gauss", "monodromy", "--alpha", "1/3", "--beta", "1/4", "--gamma", "1"}).code == 2);
  CHECK(run({"torus", "flatness", "--type", "E", "--rank", "6", "--k", "1/6", "--a-override", "7"}).code == 1);
  CHECK(run({"torus", "flatness", "--type", "E", "--rank", "6", "--k", "1/6"}).code == 0);
  CHECK(run({"roots", "dump", "--type", "D", "--rank", "3"}).code == 2);
  CHECK(run({"schwarz", "check", "--type", "A", "--rank", "6", "--p", "3"}).code == 0);
  CHECK(run({"schwarz", "check", "--type", "A", "--rank", "6", "--p", "3", "--k", "1/6"}).code == 2);
}

TEST_CASE("enumerate text lists four rows") {
  auto r = run({"schwarz", "enumerate", "--p-max", "10"});
  int rows = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("p=", 0) == 0 || line.rfind("p =", 0) == 0) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("csv output") {
  auto r = run({"schwarz", "enumerate", "--p-max", "10", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,k,types");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 4);
  CHECK(r.out.find("10,2/5,A2") != std::string::npos);
}

TEST_CASE("every JSON report fits the envelope") {
  for (const auto& cmd : json_commands()) {
    auto r = run(with_json(cmd));
    CAPTURE(cmd[0] + " " + cmd[1]);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(report::envelope_problem(doc) == "");
    CHECK(doc["operation"].get<std::string>().size() > 0);
    for (const auto& ref : doc["paper_refs"]) {
      auto s = ref.get<std::string>();
      CHECK((s.rfind("claim:", 0) == 0 || s.rfind("invented:", 0) == 0));
    }
    for (auto it = doc["residuals"].begin(); it != doc["residuals"].end(); ++it) {
      CHECK(it.key().size() > 9);
      CHECK(it.key().substr(it.key().size() - 9) == "_residual");
    }
  }
}

TEST_CASE("outputs are deterministic") {
  for (const auto& cmd : json_commands()) {
    auto a = run(with_json(cmd));
    auto b = run(with_json(cmd));
    CHECK(a.out == b.out);
    auto t1 = run(cmd);
    auto t2 = run(cmd);
    CHECK(t1.out == t2.out);
  }
  auto s1 = run({"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "7", "--depth", "5", "--format", "svg"});
  auto s2 = run({"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "7", "--depth", "5", "--format", "svg"});
  CHECK(s1.out == s2.out);
  CHECK(s1.out.rfind("<svg", 0) == 0);
}

TEST_CASE("rationals are serialized as p/q") {
  auto r = run({"schwarz", "check", "--type", "E", "--rank", "6", "--p", "4", "--format", "json"});
  json doc = json::parse(r.out);
  CHECK(doc["inputs"]["k"] == "1/4");
  bool saw_integer = false;
  for (const auto& c : doc["results"]["conditions"])
    if (c["value"] == "1/1") saw_integer = true;
  CHECK(saw_integer);
}

TEST_CASE("schema is pinned to its version") {
  // Changing the envelope keys requires a new schema_version; update both together.
  auto s = report::schema();
  CHECK(std::string(report::kSchemaVersion) == "1.0.0");
  CHECK(s["required"] == json::array({"schema_version", "module", "operation", "inputs", "results", "residuals",
                                      "paper_refs"}));
  std::vector<std::string> keys;
  for (auto it = s["properties"].begin(); it != s["properties"].end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 7);
  CHECK(s["$id"] == "urn:schwarz-atlas:report:1.0.0");
  auto r = run({"report-schema"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) == s);
}

TEST_CASE("envelope checks") {
  report::Envelope e;
  e.module = "cli";
  e.operation = "test";
  e.paper_refs = {"invented:artifact-plumbing"};
  e.residuals["x_residual"] = 0.5;
  auto doc = report::to_json(e);
  CHECK(report::envelope_problem(doc) == "");
  auto bad = doc;
  bad["residuals"]["oops"] = 1.0;
  CHECK(report::envelope_problem(bad) != "");
  bad = doc;
  bad["extra"] = 1;
  CHECK(report::envelope_problem(bad) != "");
  bad = doc;
  bad["residuals"]["x_residual"] = -1.0;
  CHECK(report::envelope_problem(bad) != "");
  bad = doc;
  bad["module"] = "nope";
  CHECK(report::envelope_problem(bad) != "");
  e.residuals["no_suffix"] = 0.0;
  CHECK_THROWS_AS(report::to_json(e), std::logic_error);
}

TEST_CASE("file outputs") {
  const std::string svg = "cli_test_tiles.svg", js = "cli_test_tiles.json";
  auto r = run({"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "5", "--svg", svg, "--json", js});
  CHECK(r.code == 0);
  std::ifstream fs(svg), fj(js);
  REQUIRE(fs.good());
  REQUIRE(fj.good());
  json doc = json::parse(fj);
  CHECK(doc["results"]["tile_count"] == 120);
  CHECK(doc["results"]["closure_reached"] == true);
  std::remove(svg.c_str());
  std::remove(js.c_str());
  CHECK(run({"triangle", "tessellate", "--k", "2", "--l", "3", "--m", "5", "--svg", "/nonexistent/dir/x.svg"}).code ==
        2);
}
