#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "laglab/config.hpp"
#include "laglab/experiments.hpp"

using namespace laglab;

namespace {

ExperimentConfig shipped(const std::string& name) {
  return validate_config(load_config(std::string(LAGLAB_SOURCE_DIR) + "/configs/" + name));
}

double cell(const CsvTable& t, std::size_t row, const std::string& column) {
  for (std::size_t i = 0; i < t.columns().size(); ++i)
    if (t.columns()[i] == column) {
      const auto& c = t.rows()[row][i];
      if (const auto* d = std::get_if<double>(&c)) return *d;
      return static_cast<double>(std::get<long long>(c));
    }
  FAIL("no column " << column);
  return 0.0;
}

void require_checks(const ExperimentReport& r) {
  for (const auto& c : r.cross_checks) {
    CAPTURE(c.what);
    CHECK(c.ok());
  }
}

}  // namespace

TEST_CASE("stationary phase residual is first order in hbar") {
  const auto r = shipped("stationary-phase.cfg");
  const auto rep = run_experiment(r);
  CHECK(rep.passed);
  require_checks(rep);
  CHECK(rep.summary["slope"].get<double>() == doctest::Approx(1.0).epsilon(0.2));
  for (std::size_t i = 0; i < rep.table.rows().size(); ++i) CHECK(cell(rep.table, i, "t") == 0.0);
}

TEST_CASE("rotor scan at t = 0 reproduces the stationary-phase pairing") {
  const std::string common =
      "grid_scale = 2\nchart = interval\nphase = plane-sin(p=0, kappa=0.5)\n"
      "amplitude = bump(center=1.5, width=1, twist=2)\nobservable = cos(amp=1, m=1, n=1)\nnodes = 1024\n";
  const auto sp = run_experiment(
      validate_config(parse_config("[stationary-phase]\nhbar = 2^-6, 2^-7, 2^-8, 2^-9\n" + common)));
  const auto rs = run_experiment(validate_config(parse_config(
      "[reduction-scan]\nhamiltonian = rotor-H\nhbar = 2^-6, 2^-7, 2^-8, 2^-9\nt_max = 8\nt_step = 1\n" + common)));
  int matched = 0;
  for (std::size_t i = 0; i < sp.table.rows().size(); ++i)
    for (std::size_t j = 0; j < rs.table.rows().size(); ++j)
      if (cell(rs.table, j, "t") == 0.0 && cell(rs.table, j, "hbar") == cell(sp.table, i, "hbar")) {
        CHECK(std::abs(cell(rs.table, j, "ev_quantum") - cell(sp.table, i, "ev_quantum")) <= 1e-12);
        CHECK(std::abs(cell(rs.table, j, "ev_classical") - cell(sp.table, i, "ev_classical")) <= 1e-12);
        ++matched;
      }
  CHECK(matched == 4);
}

TEST_CASE("rotor scan grows polynomially") {
  const auto rep = run_experiment(shipped("reduction-scan.cfg"));
  CHECK(rep.passed);
  require_checks(rep);
  CHECK(rep.summary["exponential_gain"].get<double>() <= 10.0);
}

TEST_CASE("residual halves with hbar") {
  const auto rep = run_experiment(shipped("reduction-halving.cfg"));
  CHECK(rep.passed);
  for (const auto& h : rep.summary["halving"]) {
    CAPTURE(h.dump());
    CHECK(h["within_20_percent"].get<bool>());
  }
}

TEST_CASE("integrable torus") {
  const auto rep = run_experiment(shipped("integrable-torus.cfg"));
  CHECK(rep.passed);
  require_checks(rep);
}

TEST_CASE("transversal weak limit") {
  const auto rep = run_experiment(shipped("integrable-transversal.cfg"));
  CHECK(rep.passed);
  require_checks(rep);
}

TEST_CASE("cat map momentum state enters the tube when the integer oracle says") {
  const auto rep = run_experiment(shipped("catmap-mixing.cfg"));
  CHECK(rep.passed);
  require_checks(rep);
  for (const auto& run : rep.summary["runs"]) {
    CHECK(run["entry_matches_oracle"].get<bool>());
    CHECK(run["classical_exact_zero"].get<bool>());
    CHECK(run["entry_time"].get<int>() <= 6);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rep.table.rows().size(); ++i)
    worst = std::max(worst, std::abs(cell(rep.table, i, "ev_quantum") - cell(rep.table, i, "ev_conjugated")));
  CHECK(worst <= 1e-10);
}

TEST_CASE("line state on the stable manifold stays away from the mean") {
  const auto rep = run_experiment(shipped("catmap-counterexample.cfg"));
  CHECK(rep.passed);
  for (const auto& run : rep.summary["runs"]) {
    CHECK(run["counterexample_success"].get<bool>());
    CHECK(run["min_deviation"].get<double>() >= 0.1);
  }
}

TEST_CASE("stable manifold exponent") {
  const auto rep = run_experiment(shipped("stable-manifold.cfg"));
  CHECK(rep.passed);
  require_checks(rep);
  CHECK(rep.summary["fitted_exponent"].get<double>() ==
        doctest::Approx(rep.summary["lambda"].get<double>()).epsilon(0.1));
}
