#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

// The CLI is exercised end to end through the installed binary: every case
// is a real process run against a scene file, checking exit codes and the
// written artifacts.

namespace {

using nlohmann::json;

std::string scene(const std::string& name) { return std::string(IETK_SCENES_DIR) + "/" + name; }

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& tag) {
  std::string out_path = "/tmp/ietk_cli_" + tag + ".out";
  std::string cmd = std::string(IETK_CLI_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("decompose reports one irreducible component for the swap-rotation pair") {
    RunResult r = run("decompose -i " + scene("two_circles_tau_r0.json"), "dec1");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["version"] == 1);
    CHECK(doc["complete"] == true);
    CHECK(doc["irreducible"].size() == 1);
    CHECK(doc["finite"].empty());
    CHECK(doc["residual"].empty());
    // the single component is the whole two-circle domain
    CHECK(doc["irreducible"][0]["part"]["measure"]["unit"] == "2");
  }

  TEST_CASE("decompose splits the two independent rotations into two components") {
    RunResult r = run("decompose -i " + scene("two_circles_r0_r1.json"), "dec2");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["irreducible"].size() == 2);
    CHECK(doc["finite"].empty());
    CHECK(doc["residual"].empty());
  }

  TEST_CASE("identical configurations produce byte-identical artifacts") {
    RunResult a = run("decompose -i " + scene("two_circles_tau_r0.json"), "det1");
    RunResult b = run("decompose -i " + scene("two_circles_tau_r0.json"), "det2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }

  TEST_CASE("birkhoff frequency carries exact and decimal renderings; n=0 is rejected") {
    RunResult r = run("birkhoff -i " + scene("birkhoff_rotation.json") + " --n 1000", "bir");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["frequency"]["exact"].is_string());
    CHECK(doc["frequency"]["decimal"].is_string());
    double freq = std::stod(doc["frequency"]["decimal"].get<std::string>());
    CHECK(freq > 0.25);
    CHECK(freq < 0.35);

    RunResult bad = run("birkhoff -i " + scene("birkhoff_rotation.json") + " --n 0", "bir0");
    CHECK(bad.code == 1);
  }

  TEST_CASE("verify accepts the irrational lamplighter and catches the rational control") {
    RunResult ok = run("verify -i " + scene("lamplighter_z3.json") + " --depth 3", "ver");
    REQUIRE(ok.code == 0);
    json okdoc = json::parse(ok.out);
    CHECK(okdoc["ok"] == true);
    CHECK(okdoc["exhaustive"] == true);
    CHECK(okdoc["witness"].is_null());

    RunResult broken =
        run("verify -i " + scene("lamplighter_theta_quarter.json") + " --depth 4", "ver4");
    REQUIRE(broken.code == 0);  // a found witness is a decided result
    json bdoc = json::parse(broken.out);
    CHECK(bdoc["ok"] == false);
    CHECK(bdoc["witness"] == json::array({"R", "R", "R", "R"}));
  }

  TEST_CASE("hj emits the commutation series as CSV with agreeing columns") {
    RunResult r = run("hj -i " + scene("hj_fifth.json") + " --n 5 -f csv", "hjcsv");
    REQUIRE(r.code == 0);
    CHECK(r.out == "n,nontrivial,predicate\n0,1,1\n1,1,1\n2,1,1\n3,1,1\n4,0,0\n");

    RunResult j = run("hj -i " + scene("hj_fifth.json") + " --n 100", "hjjson");
    REQUIRE(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["difference_measure"]["unit"] == "7/10");
    CHECK(doc["set"][0] == 0);
  }

  TEST_CASE("growth emits a CSV series and signals caps through the exit code") {
    RunResult r = run("growth -i " + scene("two_circles_tau_r0.json") + " --depth 3 -f csv",
                      "growth");
    REQUIRE(r.code == 0);
    CHECK(r.out.substr(0, 22) == "r,ball_size,orbit_size");
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);  // header + r=0..3

    RunResult capped = run(
        "growth -i " + scene("two_circles_tau_r0.json") + " --depth 3 --cap 4 -f csv", "gcap");
    CHECK(capped.code == 2);
  }

  TEST_CASE("distinguish reads the span coefficients off the shifted support") {
    RunResult r = run("distinguish -i " + scene("distinguish_shift.json"), "dist");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["invariants_differ"] == true);
    CHECK(doc["consistent_with_distinct"] == false);
    REQUIRE(doc["span"].is_array());
    CHECK(doc["span"][0]["exact"] == "1/5");
    CHECK(doc["span"][1]["exact"] == "1");
    CHECK(doc["span"][2]["exact"] == "0");
    CHECK(doc["span"][3]["exact"] == "0");
  }

  TEST_CASE("obstruction finds the broken relation at the first overlap") {
    RunResult r = run("obstruction -i " + scene("obstruction_s3.json") + " --depth 3", "obs");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["found"] == true);
    CHECK(doc["n"] == 1);
    CHECK(doc["overlaps"][0]["overlap"] == true);
  }

  TEST_CASE("input problems exit 1 with JSON-pointer locations") {
    std::string bad = "/tmp/ietk_cli_bad_scene.json";
    {
      std::ofstream f(bad);
      f << R"({"version": 1, "basis": {"symbols": [{"name": "a", "lo": "1/3"}]}})";
    }
    std::string cmd = std::string(IETK_CLI_BIN) + " decompose -i " + bad +
                      " > /dev/null 2> /tmp/ietk_cli_bad.err";
    int st = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(st) == 1);
    std::ifstream err("/tmp/ietk_cli_bad.err");
    std::ostringstream buf;
    buf << err.rdbuf();
    CHECK(buf.str().find("/basis/symbols/0/hi") != std::string::npos);

    RunResult missing = run("decompose -i /tmp/ietk_no_such_scene.json", "miss");
    CHECK(missing.code == 1);
    RunResult badfmt = run("distinguish -i " + scene("distinguish_shift.json") + " -f csv",
                           "fmt");
    CHECK(badfmt.code == 1);
  }
}
