#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "../tools/cli.hpp"
#include "bvw/errors.hpp"

using namespace bvw;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count parsing") {
  CHECK(cli::parse_count("1e7", "N") == 10'000'000);
  CHECK(cli::parse_count("1e+07", "N") == 10'000'000);
  CHECK(cli::parse_count("12345", "N") == 12'345);
  CHECK_THROWS_AS(cli::parse_count("1.5", "N"), UsageError);
  CHECK_THROWS_AS(cli::parse_count("-3", "N"), UsageError);
  CHECK_THROWS_AS(cli::parse_count("ten", "N"), UsageError);
}

TEST_CASE("config text and validation") {
  cli::RunConfig c;
  cli::apply_config_text("# comment\ntables_limit = 1e6\nworker_count=3\noutput_format=csv\n", c);
  CHECK(c.tables_limit == 1'000'000);
  CHECK(c.worker_count == 3);
  CHECK(c.output_format == cli::Format::csv);
  CHECK(c.seed == 1);
  CHECK_THROWS_AS(cli::apply_config_text("bogus=1\n", c), UsageError);
  CHECK_THROWS_AS(cli::apply_config_text("no equals sign\n", c), UsageError);
  CHECK_THROWS_AS(cli::apply_config_text("output_format=xml\n", c), UsageError);

  cli::RunConfig bad;
  bad.precision_target = 0.0;
  CHECK_THROWS_AS(cli::validate(bad), UsageError);
  bad = {};
  bad.tables_limit = 1;
  CHECK_THROWS_AS(cli::validate(bad), UsageError);
  CHECK_NOTHROW(cli::validate(cli::RunConfig{}));
}

TEST_CASE("flags override the config file") {
  namespace fs = std::filesystem;
  const fs::path file = fs::temp_directory_path() / "bvw-test.conf";
  {
    std::ofstream f(file);
    f << "output_format=csv\n";
  }
  const auto csv = run({"--config", file.string(), "chars", "--q", "4"});
  CHECK(csv.code == cli::kOk);
  CHECK(csv.out.rfind("index,", 0) == 0);
  const auto json = run({"--config", file.string(), "--format", "json", "chars", "--q", "4"});
  CHECK(json.code == cli::kOk);
  CHECK(nlohmann::json::parse(json.out)["phi"] == 2);
  fs::remove(file);
  CHECK(run({"--config", "/nonexistent/bvw.conf", "chars", "--q", "4"}).code == cli::kUsage);
}

TEST_CASE("chars and psi output") {
  const auto c = run({"chars", "--q", "8", "--format", "json"});
  REQUIRE(c.code == cli::kOk);
  const auto j = nlohmann::json::parse(c.out);
  std::vector<int> conductors;
  for (const auto& ch : j["characters"]) conductors.push_back(ch["conductor"]);
  CHECK(conductors == std::vector<int>{1, 4, 8, 8});

  const auto p = run({"psi", "--x", "20", "--q", "4", "--a", "1"});
  REQUIRE(p.code == cli::kOk);
  // n = 1 mod 4 up to 20 with Lambda(n) > 0: 5, 9, 13, 17.
  const double want = std::log(5.0) + std::log(3.0) + std::log(13.0) + std::log(17.0);
  CHECK(nlohmann::json::parse(p.out)["psi"].get<double>() == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"nonsense"}).code == cli::kUsage);
  CHECK(run({"chars", "--q", "20000"}).code == cli::kCapacity);
  CHECK(run({"--limit", "10000", "bv", "--x", "50000", "--Q", "3"}).code == cli::kCapacity);
  CHECK(run({"--limit", "1000", "chars", "--q", "3"}).code == cli::kUsage);
  CHECK(run({"bv", "--x", "100", "--Q", "101"}).code == cli::kUsage);
  CHECK(run({"psi", "--x", "100", "--q", "4", "--a", "2"}).code == cli::kUsage);
  const auto below = run({"verify", "mu_over_phi", "--N", "7919"});
  CHECK(below.code == cli::kUsage);
  CHECK(below.err.find("7920") != std::string::npos);
  CHECK(run({"verify", "no_such_check", "--N", "1000"}).code == cli::kUsage);
  CHECK(run({"report", "lemma3"}).code == cli::kViolation);
  CHECK(run({"verify", "prod_ratio", "--N", "1e4"}).code == cli::kOk);
}

TEST_CASE("bv csv") {
  const auto r = run({"--format", "csv", "bv", "--x", "100", "--Q", "5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.rfind("x,Q,mode,q,a_star,y_star,discrepancy,squarefree,excluded,included\n", 0) == 0);
  CHECK(r.out.find("total,,,,,,") != std::string::npos);
}

TEST_CASE("timing is opt-in") {
  const auto plain = run({"verify", "divisor", "--N", "1e4"});
  CHECK(plain.out.find("runtime_ms") == std::string::npos);
  const auto timed = run({"--timing", "verify", "divisor", "--N", "1e4"});
  CHECK(timed.out.find("runtime_ms") != std::string::npos);
}
