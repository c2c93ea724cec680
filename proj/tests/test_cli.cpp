#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "symdex/cli.hpp"
#include "symdex/replay.hpp"

using namespace symdex;

namespace {

std::string tmp_dir() {
  const char* dir = std::getenv("SYMDEX_TMP");
  return dir ? dir : "/tmp";
}

std::string write_input(const std::string& name, const std::string& content) {
  const std::string path = tmp_dir() + "/" + name;
  std::ofstream(path) << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_quiet(const Request& r) {
  std::ostringstream out, err;
  return run(r, out, err);
}

Request request(const std::string& command, const std::string& in, const std::string& out) {
  Request r;
  r.command = command;
  r.in = in;
  r.out = tmp_dir() + "/" + out;
  return r;
}

const std::string box12 = R"({"type":"box","default_radius":"1","overrides":{"1":"2"}})";
const std::string box1 = R"({"type":"box","default_radius":"1"})";

std::string geometric_series() {
  Json s;
  s["norm"] = "sum";
  s["label"] = "geometric";
  s["terms"] = Json::array();
  for (int n = 1; n <= 10; ++n) s["terms"].push_back({{std::to_string(n), "1/" + std::to_string(1 << n)}});
  return s.dump();
}

}  // namespace

TEST_CASE("delta csv rows on the overridden box") {
  Request r = request("delta", write_input("cli_box12.json", box12), "cli_delta.csv");
  r.format = "csv";
  r.n = 3;
  REQUIRE(run_quiet(r) == kExitOk);
  const std::string want =
      "N,lower,upper,witnesses\n"
      "0,2,2,\"[]\"\n"
      "1,1,1,\"[{\"\"1\"\":\"\"2\"\"}]\"\n"
      "2,1,1,\"[{\"\"1\"\":\"\"2\"\"}]\"\n"
      "3,1,1,\"[{\"\"1\"\":\"\"2\"\"}]\"\n";
  CHECK(slurp(r.out) == want);
  r.decimal = 2;
  REQUIRE(run_quiet(r) == kExitOk);
  CHECK(slurp(r.out).find("lower_decimal,upper_decimal") != std::string::npos);
}

TEST_CASE("extract report carries the unit-vector transcript") {
  Request r = request("extract", write_input("cli_box1.json", box1), "cli_extract.json");
  r.epsilon = "1/10";
  r.n = 4;
  REQUIRE(run_quiet(r) == kExitOk);
  const Json report = Json::parse(slurp(r.out));
  CHECK(report["version"] == kVersion);
  CHECK(report["request"]["command"] == "extract");
  const Json& steps = report["result"]["transcript"]["steps"];
  REQUIRE(steps.size() == 4);
  for (int n = 1; n <= 4; ++n) CHECK(steps[n - 1]["x"] == Json{{std::to_string(n), "1"}});
  CHECK(report["result"]["validation"]["ok"] == true);
  CHECK(report["result"]["margins"]["min_upper"] == "0");
}

TEST_CASE("series report") {
  Request r = request("series", write_input("cli_geo.json", geometric_series()), "cli_series.json");
  r.epsilon = "1/8";
  REQUIRE(run_quiet(r) == kExitOk);
  const Json report = Json::parse(slurp(r.out));
  CHECK(report["result"]["M"] == 3);
  CHECK(report["result"]["status"] == "found");
  CHECK(report["result"]["tail_sup"] == "127/1024");
}

TEST_CASE("every command replays cleanly and reruns byte-identically") {
  const std::string b1 = write_input("cli_box1.json", box1);
  const std::string b12 = write_input("cli_box12.json", box12);
  const std::string geo = write_input("cli_geo.json", geometric_series());
  const std::string ext = write_input(
      "cli_ext.json", R"({"set":{"type":"finite","points":[{"1":"1"},{"2":"1"},{}]},"point":{"1":"1"}})");
  std::vector<Request> requests{request("delta", b12, "det_delta.json"), request("extract", b1, "det_extract.json"),
                                request("refine", b12, "det_refine.json"), request("tree", b1, "det_tree.json"),
                                request("series", geo, "det_series.json"), request("extreme", ext, "det_extreme.json"),
                                request("one_sided", b1, "det_one_sided.json")};
  requests[3].depth = 4;
  requests[5].epsilon = "1/1000000";
  for (auto& r : requests) {
    r.seed = 5;
    REQUIRE(run_quiet(r) == kExitOk);
    const std::string first = slurp(r.out);
    Request again = r;
    again.out += ".again";
    REQUIRE(run_quiet(again) == kExitOk);
    CHECK(slurp(again.out) == first);
    Request check = request("oracle", r.out, "oracle_" + r.command + ".json");
    CHECK(run_quiet(check) == kExitOk);
    const ReplayOutcome o = replay_report(Json::parse(first));
    CHECK(o.failed == 0);
    CHECK(o.checked > 0);
  }
}

TEST_CASE("tampered reports fail the oracle") {
  Request r = request("tree", write_input("cli_box1.json", box1), "tamper_tree.json");
  REQUIRE(run_quiet(r) == kExitOk);
  Json report = Json::parse(slurp(r.out));
  for (auto& c : report["replay"]) {
    if (c["check"] == "member") {
      c["point"] = Json{{"1", "3"}};
      break;
    }
  }
  const std::string bad = write_input("tamper_tree_bad.json", report.dump());
  CHECK(run_quiet(request("oracle", bad, "tamper_oracle.json")) == kExitInvariant);
}

TEST_CASE("exit codes") {
  CHECK(run_quiet(request("delta", tmp_dir() + "/does_not_exist.json", "x.json")) == kExitInvalidInput);
  CHECK(run_quiet(request("delta", write_input("cli_bad.json", "{\"type\":\"blob\"}"), "x.json")) == kExitInvalidInput);
  CHECK(run_quiet(request("delta", write_input("cli_badjson.json", "{"), "x.json")) == kExitInvalidInput);
  Request csv = request("extract", write_input("cli_box1.json", box1), "x.csv");
  csv.format = "csv";
  CHECK(run_quiet(csv) == kExitInvalidInput);
  Request eps = request("extract", write_input("cli_box1.json", box1), "x.json");
  eps.epsilon = "-1";
  CHECK(run_quiet(eps) == kExitInvalidInput);
  Request budget = request(
      "delta",
      write_input("cli_many.json",
                  R"({"type":"finite","points":[{"1":"1"},{"1":"2"},{"1":"3"},{"1":"4"},{"1":"5"},{"1":"6"}]})"),
      "x.json");
  budget.strategy = "exhaustive";
  budget.n = 3;
  budget.budget = 10;
  CHECK(run_quiet(budget) == kExitBudget);
}

TEST_CASE("command line parsing") {
  const std::string in = write_input("cli_box1.json", box1);
  const std::string out = tmp_dir() + "/cli_main.json";
  std::vector<std::string> args{"symdex", "delta", "--in", in, "--out", out, "--n", "2", "--seed", "3"};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  CHECK(cli_main(static_cast<int>(argv.size()), argv.data()) == kExitOk);
  std::vector<std::string> bad{"symdex", "frobnicate", "--in", in, "--out", out};
  std::vector<char*> bad_argv;
  for (auto& a : bad) bad_argv.push_back(a.data());
  CHECK(cli_main(static_cast<int>(bad_argv.size()), bad_argv.data()) == kExitInvalidInput);
}
