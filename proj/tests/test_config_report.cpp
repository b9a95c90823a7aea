#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "laglab/config.hpp"
#include "laglab/error.hpp"
#include "laglab/experiments.hpp"
#include "laglab/report.hpp"

using namespace laglab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    validate_config(parse_config(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal =
    "[stationary-phase]\n"
    "hbar = 2^-5, 2^-6, 2^-7, 2^-8\n"
    "phase = plane-sin(p=0, kappa=0.5)\n"
    "amplitude = bump(center=1.5, width=1, twist=2)\n"
    "observable = cos(amp=1, m=1, n=1)\n";

}  // namespace

TEST_CASE("parser reads sections, keys and comments") {
  const auto raw = parse_config("# header\n[stationary-phase]\n hbar = 2^-5, 2^-6  # trailing\n\nseed=3\n");
  CHECK(raw.kind == "stationary-phase");
  CHECK(raw.values.at("hbar") == "2^-5, 2^-6");
  CHECK(raw.values.at("seed") == "3");
  CHECK(raw.lines.at("seed") == 5);
}

TEST_CASE("parser errors carry the line number") {
  CHECK_THROWS_WITH_AS(parse_config("[a]\nx = 1\nx = 2\n", "f.cfg"), doctest::Contains("f.cfg:3"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[a]\nx = 1\nx = 2\n"), doctest::Contains("duplicate key 'x'"), ConfigError);
  CHECK_THROWS_AS(parse_config("x = 1\n[a]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[a]\n[b]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[a\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[a]\njunk\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("# nothing\n"), doctest::Contains("missing [kind]"), ConfigError);
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_config("/nonexistent/none.cfg"), ConfigIoError);
}

TEST_CASE("validation fills defaults") {
  const auto cfg = validate_config(parse_config(kMinimal));
  CHECK(cfg.kind() == "stationary-phase");
  CHECK(cfg.reals("hbar").size() == 4);
  CHECK(cfg.reals("hbar")[0] == doctest::Approx(1.0 / 32));
  for (const auto& f : schema_for("stationary-phase")) CHECK(cfg.resolved().count(f.name) == 1);
  CHECK(cfg.echo().find("[stationary-phase]") != std::string::npos);
}

TEST_CASE("every kind has a schema and a shipped config that validates") {
  for (const auto& kind : experiment_kinds()) {
    CHECK_FALSE(schema_for(kind).empty());
  }
  for (const auto& entry : std::filesystem::directory_iterator(std::string(LAGLAB_SOURCE_DIR) + "/configs")) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(validate_config(load_config(entry.path().string())));
  }
}

TEST_CASE("validation names each offending field") {
  CHECK(error_of("[nonsense]\n").find("unknown experiment kind") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "colour = blue\n").find("field 'colour'") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "nodes = 2.5\n").find("field 'nodes'") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "nodes = -4\n").find("field 'nodes'") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "chart = sphere\n").find("field 'chart'") != std::string::npos);
  CHECK(error_of("[stationary-phase]\nhbar = 2^-5, 2^-6\nphase = plane-sin(p=0, kappa=0.5)\n"
                 "amplitude = bump(center=1.5, width=1, twist=2)\nobservable = cos(amp=1, m=1, n=1)\n")
            .find("need at least 4") != std::string::npos);
  CHECK(error_of("[stationary-phase]\nhbar = 0.03, 2^-6, 2^-7, 2^-8\nphase = plane-sin(p=0, kappa=0.5)\n"
                 "amplitude = bump(center=1.5, width=1, twist=2)\nobservable = cos(amp=1, m=1, n=1)\n")
            .find("power of two") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "slope_min = 2\nslope_max = 1\n").find("slope_min") != std::string::npos);

  const auto both = error_of(std::string(kMinimal) + "nodes = x\nseed = y\n");
  CHECK(both.find("field 'nodes'") != std::string::npos);
  CHECK(both.find("field 'seed'") != std::string::npos);
}

TEST_CASE("reals are written with 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-2.5e-300) == "-2.5e-300");
  CHECK(std::strtod(format_real(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("csv rendering") {
  CsvTable t({"a", "b", "c"});
  t.add_row({0.5, 7LL, std::string("x")});
  t.add_row({1e-3, -1LL, std::string("")});
  CHECK(t.render() == "a,b,c\n0.5,7,x\n0.001,-1,\n");
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
}

TEST_CASE("cross-check tolerance") {
  CHECK(CrossCheck{"a", 1.0, 1.0 + 1e-12, 1e-10}.ok());
  CHECK_FALSE(CrossCheck{"a", 1.0, 1.1, 1e-10}.ok());
}

TEST_CASE("report json layout and files") {
  ExperimentReport r;
  r.kind = "stationary-phase";
  r.table = CsvTable({"x"});
  r.table.add_row({1.0});
  r.summary["slope"] = 1.0;
  r.cross_checks.push_back({"probe", 1.0, 1.0, 1e-12});
  r.warnings.push_back("careful");
  r.passed = true;
  r.config_echo = "[stationary-phase]\n";
  r.config_origin = "mem";
  const auto j = r.to_json();
  for (const char* k : {"kind", "passed", "summary", "cross_validation", "warnings", "provenance"}) CHECK(j.contains(k));
  for (const char* k : {"code_version", "config_origin", "config", "timestamp"}) CHECK(j["provenance"].contains(k));
  CHECK(j["cross_validation"][0]["ok"] == true);
  CHECK(j["warnings"][0] == "careful");

  const auto dir = std::filesystem::temp_directory_path() / "laglab_report_test";
  std::filesystem::remove_all(dir);
  const auto w = write_report(r, (dir / "nested").string());
  CHECK(slurp(w.csv_path) == "x\n1\n");
  CHECK(nlohmann::json::parse(slurp(w.json_path))["kind"] == "stationary-phase");
  std::filesystem::remove_all(dir);
}

TEST_CASE("equal configs give byte-identical csv") {
  const auto cfg = validate_config(load_config(std::string(LAGLAB_SOURCE_DIR) + "/configs/stationary-phase.cfg"));
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  CHECK(a.table.render() == b.table.render());
  CHECK(a.summary["resolved_config"] == b.summary["resolved_config"]);
}
