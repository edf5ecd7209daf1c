#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uqie/cli.hpp"

using namespace uqie;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "uqie_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code = 0;
  std::string log;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "uqie");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream log, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), log, err);
  r.log = log.str();
  r.err = err.str();
  return r;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.yaml";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("solve mode with zero kernels writes x = 1") {
  const fs::path dir = scratch("solve");
  const fs::path cfg = write_config(dir, R"(schema: uqie/1
mode: solve
grid_n: 10
problem:
  horizon: 1
  forcing: {family: constant, c: 1}
  f1: {family: zero}
  f2: {family: zero}
)");
  const Run r = invoke({"--config", cfg.string(), "--out", (dir / "out").string()});
  CHECK(r.code == kExitOk);
  std::istringstream csv(slurp(dir / "out" / "solution.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x");
  int rows = 0;
  while (std::getline(csv, line)) {
    CHECK(line.substr(line.find(',') + 1) == "1");
    ++rows;
  }
  CHECK(rows == 11);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["schema"] == "uqie-report/1");
  CHECK(report["solve"]["status"] == "converged");
}

TEST_CASE("audit mode reports the understated majorant") {
  const fs::path dir = scratch("audit");
  const fs::path cfg = write_config(dir, R"(schema: uqie/1
mode: audit
grid_n: 64
problem:
  horizon: 1
  forcing: {family: constant, c: 1}
  f1: {family: affine_state, c1: 0, c2: 0.5, cap: 2}
  f2: {family: affine_state, c1: 0, c2: 0.5, cap: 2}
  m1: {family: constant, c: 0.1}
  m2: {family: constant, c: 0.1}
)");
  const Run r = invoke({"--config", cfg.string(), "--out", (dir / "out").string()});
  CHECK(r.code == kExitFailedVerdict);
  CHECK(r.log.find("majorant violations") != std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["audit"]["caratheodory_ok"] == false);
  CHECK_FALSE(report["audit"]["majorant_violations"].empty());
}

TEST_CASE("config and flag errors exit 2") {
  const fs::path dir = scratch("errors");
  const fs::path bad = write_config(dir, "schema: uqie/1\nmode: solve\ngrid_n: 1\n");
  const Run r = invoke({"--config", bad.string()});
  CHECK(r.code == kExitConfigError);
  CHECK(r.err.find("grid_n") != std::string::npos);

  CHECK(invoke({"--mode", "corpus", "--grid-n", "1"}).code == kExitConfigError);
  CHECK(invoke({"--mode", "corpus", "--rho", "1.2"}).code == kExitConfigError);
  CHECK(invoke({"--mode", "nope"}).code == kExitConfigError);
  CHECK(invoke({}).code == kExitConfigError);
  CHECK(invoke({"--config", (dir / "missing.yaml").string()}).code == kExitConfigError);
  CHECK(invoke({"--bogus"}).code == kExitConfigError);
}

TEST_CASE("manufactured forcing that turns negative exits 2") {
  const fs::path dir = scratch("negative");
  const fs::path cfg = write_config(dir, R"(schema: uqie/1
mode: solve
grid_n: 20
problem:
  horizon: 1
  manufactured: {x_star: {family: constant, c: 1}, oracle_n: 1024}
  f1: {family: affine_state, c1: 0, c2: 2}
  f2: {family: affine_state, c1: 0, c2: 2}
)");
  const Run r = invoke({"--config", cfg.string(), "--out", (dir / "out").string()});
  CHECK(r.code == kExitConfigError);
  CHECK(r.err.find("manufactured forcing a(") != std::string::npos);
}

TEST_CASE("extremal mode on the flagship problem") {
  const fs::path dir = scratch("extremal");
  const fs::path cfg = write_config(dir, R"(schema: uqie/1
mode: extremal
grid_n: 100
problem:
  horizon: 1
  manufactured: {x_star: {family: constant, c: 1}, oracle_n: 2048}
  f1: {family: affine_state, c1: 0, c2: 0.5, cap: 2}
  f2: {family: affine_state, c1: 0, c2: 0.5, cap: 2}
)");
  const Run r = invoke({"--config", cfg.string(), "--out", (dir / "out").string(), "--count", "4"});
  CHECK(r.code == kExitOk);
  std::istringstream plus(slurp(dir / "out" / "family_plus.csv"));
  std::string header;
  std::getline(plus, header);
  CHECK(header == "t,x,x_eps_0,x_eps_1,x_eps_2,x_eps_3,x_extrapolated,x_linear");
  CHECK(fs::exists(dir / "out" / "family_minus.csv"));
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["sandwich"]["holds"] == true);
}

TEST_CASE("lemma mode and corpus mode are deterministic") {
  const fs::path dir = scratch("determinism");
  const Run a = invoke({"--mode", "lemma", "--seed", "5", "--grid-n", "40", "--out", (dir / "a").string()});
  const Run b = invoke({"--mode", "lemma", "--seed", "5", "--grid-n", "40", "--out", (dir / "b").string()});
  CHECK(a.code == kExitOk);
  CHECK(b.code == kExitOk);
  CHECK(slurp(dir / "a" / "lemma.csv") == slurp(dir / "b" / "lemma.csv"));
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));

  const Run c = invoke({"--mode", "corpus", "--grid-n", "100", "--tol", "1e-10", "--out", (dir / "c").string()});
  const Run d = invoke({"--mode", "corpus", "--grid-n", "100", "--tol", "1e-10", "--out", (dir / "d").string()});
  CHECK(c.code == d.code);
  CHECK(slurp(dir / "c" / "corpus.csv") == slurp(dir / "d" / "corpus.csv"));
}
