#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "laglab/cli.hpp"

using namespace laglab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "laglab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("laglab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config(const std::string& name) { return std::string(LAGLAB_SOURCE_DIR) + "/configs/" + name; }

struct EnvGuard {
  explicit EnvGuard(const std::string& value) { setenv("LAGLAB_OUTPUT_DIR", value.c_str(), 1); }
  ~EnvGuard() { unsetenv("LAGLAB_OUTPUT_DIR"); }
};

}  // namespace

TEST_CASE("version and catalog") {
  auto r = run({"version"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("laglab ", 0) == 0);
  r = run({"list-catalog"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("cos") != std::string::npos);
  CHECK(r.out.find("bump") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"run"}).code == kExitUsage);
  CHECK(run({"validate", config("stationary-phase.cfg"), "--frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("validate") {
  auto r = run({"validate", config("stationary-phase.cfg")});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "OK\n");

  r = run({"validate", "/nonexistent/x.cfg"});
  CHECK(r.code == kExitNoInput);
  CHECK(r.err.find("/nonexistent/x.cfg") != std::string::npos);

  const auto dir = scratch("bad");
  std::ofstream(dir / "bad.cfg") << "[stationary-phase]\nhbar = 2^-5, 2^-6, 2^-7, 2^-8\nnodes = many\n";
  r = run({"validate", (dir / "bad.cfg").string()});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("field 'nodes'") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run writes reports to the override directory") {
  const auto dir = scratch("run");
  EnvGuard env(dir.string());
  const auto r = run({"run", config("stationary-phase.cfg")});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("stationary-phase: PASS") != std::string::npos);
  CHECK(fs::exists(dir / "stationary-phase.csv"));
  CHECK(fs::exists(dir / "stationary-phase.json"));

  const auto golden = fs::path(LAGLAB_SOURCE_DIR) / "tests/golden/stationary-phase.csv";
  REQUIRE(fs::exists(golden));
  CHECK(slurp(dir / "stationary-phase.csv") == slurp(golden));
  fs::remove_all(dir);
}

TEST_CASE("failed acceptance exits 2") {
  const auto dir = scratch("fail");
  std::string text = slurp(config("stationary-phase.cfg"));
  const auto pos = text.find("slope_min = 0.8");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "slope_min = 1.15");
  std::ofstream(dir / "strict.cfg") << text;
  EnvGuard env((dir / "out").string());
  const auto r = run({"run", (dir / "strict.cfg").string()});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("stationary-phase: FAIL") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "stationary-phase.csv"));
  fs::remove_all(dir);
}

TEST_CASE("installed binary agrees with the library entry point") {
  const auto dir = scratch("bin");
  const std::string cmd = std::string("\"") + LAGLAB_CLI_PATH + "\" validate \"" + config("catmap-mixing.cfg") +
                          "\" > \"" + (dir / "o.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(slurp(dir / "o.txt") == "OK\n");
  const std::string bad = std::string("\"") + LAGLAB_CLI_PATH + "\" nothing 2> /dev/null";
  CHECK(WEXITSTATUS(std::system(bad.c_str())) == 64);
  fs::remove_all(dir);
}
