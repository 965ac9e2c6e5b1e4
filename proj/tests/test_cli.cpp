#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "finite_hgf/hgf.hpp"
#include "oracle.hpp"

using namespace finite_hgf;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "finite-hgf");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// RAII guard so one test's environment does not leak into the next.
struct EnvVar {
  explicit EnvVar(const char* value) { ::setenv("FINITE_HGF_THREADS", value, 1); }
  ~EnvVar() { ::unsetenv("FINITE_HGF_THREADS"); }
};

}  // namespace

TEST_CASE("field-info") {
  auto r = run({"field-info", "--q", "9"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["p"] == 3);
  CHECK(j["f"] == 2);
  CHECK(j["q"] == 9);
  CHECK(j["modulus"].size() == 3);

  r = run({"field-info", "--p", "5"});
  CHECK(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["generator"] == 2);

  r = run({"field-info", "--q", "12"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("InvalidField") != std::string::npos);
}

TEST_CASE("eval: 0F0 over GF(3) at 1 is a primitive cube root of unity") {
  const auto r = run({"eval", "--q", "3", "--den", "eps", "--lambda", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const auto value = CycloNum::from_json(json::parse(r.out)["value"]);
  const auto zeta = CycloNum::root_of_unity(3, 1);
  CHECK(value == zeta * zeta);

  const auto text = run({"eval", "--q", "3", "--den", "eps", "--lambda", "1", "--format", "text"});
  CHECK(text.out.find("approx") != std::string::npos);
}

TEST_CASE("eval JSON round-trips to the library value") {
  const auto k = FiniteField::from_order(7);
  const HgfKernel kernel(*k, k->one());
  const std::vector<std::uint32_t> num{1, 2}, den{0, 3};
  for (std::uint32_t lambda = 0; lambda < 7; ++lambda) {
    const auto r = run({"eval", "--q", "7", "--num", "chi:1,chi:2", "--den", "eps,chi:3", "--lambda",
                        std::to_string(lambda)});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(CycloNum::from_json(json::parse(r.out)["value"]) == kernel.eval(num, den, FieldElem{lambda}));
  }
}

TEST_CASE("table: 1F0(phi) over GF(5) is phi(1 - lambda)") {
  const auto r = run({"table", "--q", "5", "--num", "phi", "--den", "eps", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "lambda,value");
  const std::vector<long> expect{0, 0, 1, -1, -1};
  for (long e : expect) {
    REQUIRE(std::getline(lines, line));
    const auto comma = line.find(',');
    std::string cell = line.substr(comma + 1);
    cell = cell.substr(1, cell.size() - 2);  // strip the CSV quotes
    std::string unquoted;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      unquoted += cell[i];
      if (cell[i] == '"') ++i;
    }
    CHECK(CycloNum::from_json(json::parse(unquoted)) == CycloNum(e));
  }
}

TEST_CASE("gauss and jacobi agree with the oracle") {
  const auto k = FiniteField::from_order(7);
  auto r = run({"gauss", "--q", "7", "--chi", "0"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(CycloNum::from_json(json::parse(r.out)["value"]) == CycloNum(1));

  r = run({"gauss", "--q", "7", "--chi", "chi:1"});
  CHECK(oracle::close(CycloNum::from_json(json::parse(r.out)["value"]), oracle::gauss(*k, 1)));

  r = run({"jacobi", "--q", "7", "--chi", "chi:2", "--chi2", "chi:3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(oracle::close(CycloNum::from_json(json::parse(r.out)["value"]), oracle::jacobi(*k, 2, 3)));

  r = run({"f4", "--q", "5", "--alpha", "chi:1", "--beta", "chi:2", "--gamma", "chi:3", "--gamma2", "eps", "--x", "2",
           "--y", "3"});
  CHECK(r.code == cli::kExitOk);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--q", "5", "--den", "eps"}).code == cli::kExitUsage);  // no --lambda
  CHECK(run({"eval", "--q", "5", "--den", "eps", "--lambda", "5"}).code == cli::kExitUsage);

  const auto bad = run({"gauss", "--q", "5", "--chi", "chi:x"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("position") != std::string::npos);

  CHECK(run({"verify", "--q", "5", "--ids", "NOPE"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("verify exit codes and warnings") {
  auto r = run({"verify", "--q", "5", "--ids", "P6-EULER"});
  CHECK(r.code == cli::kExitOk);
  const auto reports = json::parse(r.out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["failures"].empty());

  r = run({"verify", "--q", "4", "--ids", "THM-B4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("p=2") != std::string::npos);

  r = run({"verify", "--q", "7", "--ids", "THM-B12"});
  CHECK(r.code == cli::kExitOk);
  CHECK(!r.err.empty());

  r = run({"verify", "--q", "5", "--ids", "P6-EULER", "--mutate"});
  CHECK(r.code == cli::kExitVerificationFailed);
  CHECK(!json::parse(r.out)[0]["failures"].empty());

  r = run({"verify", "--list"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("PFAFF") != std::string::npos);
}

TEST_CASE("verify --out writes the reports") {
  const std::string path = "test_cli_verify_out.json";
  const auto r = run({"verify", "--q", "5,7", "--ids", "P1-KUMMER-EXP", "--out", path});
  CHECK(r.code == cli::kExitOk);
  std::ifstream in(path);
  const auto reports = json::parse(in);
  CHECK(reports.size() == 2);
  CHECK(reports[1]["field"]["q"] == 7);
  std::remove(path.c_str());
}

TEST_CASE("sampled verify output is reproducible and thread-count independent") {
  const std::vector<std::string> args{"verify", "--q",  "9",  "--ids", "STRUCT-G8,P6-EULER", "--mode",
                                      "sample", "--n",  "30", "--seed", "11"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)[0]["seed"] == 11);

  std::string threaded;
  {
    EnvVar env("3");
    threaded = run(args).out;
  }
  CHECK(threaded == a.out);
  auto with_flag = args;
  with_flag.insert(with_flag.end(), {"--threads", "2"});
  CHECK(run(with_flag).out == a.out);
}

TEST_CASE("FINITE_HGF_THREADS validation") {
  {
    EnvVar env("0");
    CHECK(run({"verify", "--q", "5", "--ids", "P6-EULER"}).code == cli::kExitUsage);
  }
  {
    EnvVar env("lots");
    CHECK(run({"verify", "--q", "5", "--ids", "P6-EULER"}).code == cli::kExitUsage);
  }
  {
    // The flag wins over the environment.
    EnvVar env("0");
    CHECK(run({"verify", "--q", "5", "--ids", "P6-EULER", "--threads", "1"}).code == cli::kExitOk);
  }
}
