#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rellich/cli.hpp"

using doctest::Approx;
using nlohmann::json;
namespace cli = rellich::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json body() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::vector<std::string> laplace5{"--N", "5", "--c", "0", "--b", "0", "--p", "2"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::vector<std::string> command(const std::vector<std::string>& path, const std::vector<std::string>& extra = {}) {
  return with(with(path, laplace5), extra);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check holds on the ball with the best constant") {
    const Run r = run(command({"check"}, {"--alpha", "0", "--domain", "ball", "--J", "all"}));
    CHECK(r.code == cli::kExitOk);
    const json j = r.body();
    CHECK(j["schema_version"] == cli::kSchemaVersion);
    CHECK(j["holds"] == true);
    CHECK(j["best_constant"].get<double>() == Approx(1.25));
    CHECK(j["failing_modes"].empty());
    CHECK(j["critical_alphas"][0]["minus"].get<double>() == Approx(-0.5));
  }

  TEST_CASE("check reports the boundary obstruction") {
    const Run r = run(command({"check"}, {"--alpha", "3", "--domain", "ball"}));
    CHECK(r.code == cli::kExitFail);
    const json j = r.body();
    CHECK(j["holds"] == false);
    CHECK(j["failing_modes"][0]["branch"] == "boundary");
    CHECK(j["best_constant"].is_null());
  }

  TEST_CASE("check precondition failure") {
    const Run r = run({"check", "--N", "5", "--p", "1", "--alpha", "0", "--domain", "bounded"});
    CHECK(r.code == cli::kExitPrecondition);
    CHECK(r.body()["schema_version"] == cli::kSchemaVersion);
    CHECK(r.body().contains("error"));
    CHECK(!r.err.empty());
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run(command({"check"}, {"--alpha", "0", "--p", "abc"})).code == cli::kExitUsage);
    CHECK(run(command({"check"}, {"--alpha", "0", "--J", "set:"})).code == cli::kExitUsage);
    CHECK(run(command({"check"}, {"--alpha", "0", "--domain", "torus"})).code == cli::kExitUsage);
    CHECK(run(command({"check"})).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
  }

  TEST_CASE("spectrum classification") {
    Run r = run(command({"spectrum"}, {"--interval", "unit", "--lambda", "-2.25"}));
    CHECK(r.code == cli::kExitOk);
    json j = r.body();
    CHECK(j["classification"]["in_point_certified"] == true);
    CHECK(j["region"]["k"].get<double>() == Approx(-2.0));
    r = run(command({"spectrum"}, {"--domain", "ball", "--J", "ge:1", "--lambda", "-9.25"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body()["classification"]["in_spectrum"] == true);
    r = run(command({"spectrum"}, {"--beta", "-1", "--side", "positive", "--lambda", "-1,0"}));
    CHECK(r.body()["classification"]["in_residual_not_approx"] == true);
    r = run(command({"spectrum"}, {"--interval", "half", "--lambda", "-1.25,0"}));
    CHECK(r.body()["classification"]["in_approx"] == true);
  }

  TEST_CASE("spectrum sampling writes 1001 rows") {
    const auto path = std::filesystem::temp_directory_path() / "rellich_region_test.csv";
    std::filesystem::remove(path);
    const Run r = run(command({"spectrum"}, {"--sample", "--xi-max", "5", "-o", path.string()}));
    CHECK(r.code == cli::kExitOk);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "re,im,tag");
    int rows = 0;
    while (std::getline(in, line)) {
      if (!line.empty()) ++rows;
    }
    CHECK(rows == 1001);
    std::filesystem::remove(path);
  }

  TEST_CASE("counterexample families") {
    Run r = run(command({"counterexample"}, {"--n", "0", "--mode", "minus"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body()["slope"].get<double>() == Approx(1.0).epsilon(0.05));
    CHECK(r.body()["rows"].size() == 4);
    r = run(command({"counterexample"}, {"--mode", "boundary", "--alpha", "3"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body()["residual_sup"].get<double>() < 1e-8);
    r = run({"counterexample", "--N", "5", "--b", "-3", "--n", "0"});
    CHECK(r.code == cli::kExitUnsupported);
    CHECK(r.body()["error"] == "UnsupportedRegime");
    r = run(command({"counterexample"}, {"--n", "0", "--mode", "plus", "--format", "csv"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.rfind("epsilon,ratio\n", 0) == 0);
    CHECK(r.out.find("\n# {") != std::string::npos);
  }

  TEST_CASE("verify targets") {
    Run r = run(command({"verify", "rellich"}, {"--alpha", "0", "--domain", "rn"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body()["report"]["passed"] == true);
    r = run(command({"verify", "remainder"}, {"--alpha", "0"}));
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body()["report"]["metrics"]["remainder_constant"].get<double>() == Approx(0.3125));
    r = run(command({"verify", "critical"}, {"--n", "0", "--mode", "minus"}));
    CHECK(r.code == cli::kExitOk);
    for (const std::string target : {"hardy", "aux", "oned", "dissipativity"}) {
      const bool drift = target == "hardy" || target == "aux";
      r = run(command({"verify", target}, drift ? std::vector<std::string>{"--beta", "2"} : std::vector<std::string>{}));
      INFO(target << ": " << r.err);
      CHECK(r.code == cli::kExitOk);
    }
    r = run(command({"verify", "remainder"}, {"--alpha", "2.6"}));
    CHECK(r.code == cli::kExitPrecondition);
  }

  TEST_CASE("output is deterministic and echoes the seed") {
    const auto args = command({"verify", "rellich"}, {"--alpha", "0.3", "--domain", "rn", "--seed", "17"});
    const Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.body()["seed"] == 17);
    const Run c = run(command({"verify", "rellich"}, {"--alpha", "0.3", "--domain", "rn", "--seed", "18"}));
    CHECK(c.out != a.out);
  }

  TEST_CASE("tolerance from the environment and the flag") {
    const auto args = command({"check"}, {"--alpha", "-0.4999", "--domain", "rn"});
    CHECK(run(args).code == cli::kExitOk);
    ::setenv("RELLICH_TOL", "1e-3", 1);
    CHECK(run(args).code == cli::kExitFail);
    CHECK(run(with(args, {"--tol", "1e-9"})).code == cli::kExitOk);
    ::setenv("RELLICH_TOL", "nonsense", 1);
    CHECK(run(args).code == cli::kExitUsage);
    ::unsetenv("RELLICH_TOL");
  }
}
