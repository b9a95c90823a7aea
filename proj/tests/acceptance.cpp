// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "laglab/catalog.hpp"
#include "laglab/config.hpp"
#include "laglab/experiments.hpp"
#include "laglab/grid.hpp"
#include "laglab/propagate.hpp"
#include "laglab/random.hpp"
#include "laglab/weyl.hpp"

using namespace laglab;

namespace {

constexpr double kSlopeLo = 0.8, kSlopeHi = 1.2;
constexpr double kStationarySeconds = 60, kScanSeconds = 300, kTransversalSeconds = 120, kCatmapSeconds = 120;
constexpr int kStationaryMaxN = 4096;
constexpr double kPowerResidualMax = 0.5, kExpGainMax = 10;
constexpr double kTorusCRatioMax = 3, kTorusTMax = 50;
constexpr double kTransversalPMin = 0.9;
constexpr int kCatmapN = 1024, kCatmapEntryMax = 6;
constexpr double kCatmapTube = 1e-6;
constexpr double kEgorovTol = 1e-10;
constexpr double kDeviationMin = 0.1;
constexpr double kExponentRatioMin = 0.9, kPeriodicityTol = 1e-12;
constexpr double kUnitarityTol = 1e-11, kRoundTripTol = 1e-12, kModeSumTol = 1e-8;

struct Timed {
  ExperimentReport report;
  double seconds;
};

Timed run(const std::string& name) {
  const auto cfg = validate_config(load_config(std::string(LAGLAB_SOURCE_DIR) + "/configs/" + name));
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = run_experiment(cfg);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(rep), s};
}

double column_max(const CsvTable& t, const std::string& column) {
  double m = -1e300;
  for (std::size_t i = 0; i < t.columns().size(); ++i)
    if (t.columns()[i] == column)
      for (const auto& row : t.rows()) {
        const auto& c = row[i];
        m = std::max(m, std::holds_alternative<double>(c) ? std::get<double>(c)
                                                          : static_cast<double>(std::get<long long>(c)));
      }
  return m;
}

bool checks_ok(const ExperimentReport& r) {
  for (const auto& c : r.cross_checks)
    if (!c.ok()) return false;
  return true;
}

int failures = 0;

void line(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    line(id, name, false, std::string("error: ") + e.what());
  }
}

WaveFunction random_band_limited(const Grid& g, std::uint64_t seed, int band) {
  const CounterRng rng(seed);
  std::vector<cplx> c(static_cast<std::size_t>(g.size()));
  for (int s = 0; s < g.size(); ++s) {
    if (std::abs(g.k_of_slot(s)) >= band) continue;
    const auto i = static_cast<std::uint64_t>(s);
    c[static_cast<std::size_t>(s)] = {rng.uniform(2 * i, -1, 1), rng.uniform(2 * i + 1, -1, 1)};
  }
  return WaveFunction::from_momentum(g, c);
}

}  // namespace

int main() {
  guarded(1, "stationary-phase slope", [] {
    const auto r = run("stationary-phase.cfg");
    const double slope = r.report.summary["slope"].get<double>();
    const double n = column_max(r.report.table, "N");
    line(1, "stationary-phase slope",
         slope >= kSlopeLo && slope <= kSlopeHi && r.seconds < kStationarySeconds && n <= kStationaryMaxN &&
             checks_ok(r.report),
         fmt("slope %.4f in [0.8, 1.2], max N %.0f, %.1f s", slope, n, r.seconds));
  });

  guarded(2, "rotor reduction bound", [] {
    const auto r = run("reduction-scan.cfg");
    const auto& s = r.report.summary;
    const double rms = s["power_fit"]["rms_log_residual"].get<double>();
    const double gain = s["exponential_gain"].get<double>();
    line(2, "rotor reduction bound",
         rms < kPowerResidualMax && gain <= kExpGainMax && r.seconds < kScanSeconds && checks_ok(r.report),
         fmt("power fit rms log residual %.3f, exponential gain %.3f, %.1f s", rms, gain, r.seconds));
  });

  guarded(3, "torus quasi-periodicity", [] {
    const auto r = run("integrable-torus.cfg");
    const auto& s = r.report.summary;
    const double ratio = s["c_ratio"].get<double>();
    bool peaks = true;
    for (const auto& p : s["spectral_peaks"]) peaks = peaks && p["ok"].get<bool>();
    const double t_max = column_max(r.report.table, "t");
    line(3, "torus quasi-periodicity",
         ratio < kTorusCRatioMax && peaks && t_max <= kTorusTMax + 1e-9 && checks_ok(r.report),
         fmt("C ratio %.3f, beta %.3f, peaks within one bin %.0f, %.1f s", ratio, s["beta"].get<double>(),
             peaks ? 1.0 : 0.0, r.seconds));
  });

  guarded(4, "transversal decay", [] {
    const auto r = run("integrable-transversal.cfg");
    const double p = r.report.summary["power_exponent"].get<double>();
    line(4, "transversal decay", p >= kTransversalPMin && r.seconds < kTransversalSeconds && checks_ok(r.report),
         fmt("fitted p %.3f, %.1f s", p, r.seconds));
  });

  bool mixing_ok = false;
  guarded(5, "cat map universal limit", [&] {
    const auto r = run("catmap-mixing.cfg");
    const auto& s = r.report.summary;
    bool ok = r.seconds < kCatmapSeconds && s["tube"].get<double>() <= kCatmapTube;
    int entry = -1;
    for (const auto& run : s["runs"]) {
      entry = run["entry_time"].is_null() ? -1 : run["entry_time"].get<int>();
      ok = ok && run["N"].get<int>() == kCatmapN && entry >= 0 && entry <= kCatmapEntryMax &&
           run["classical_exact_zero"].get<bool>() && run["entry_matches_oracle"].get<bool>() &&
           run["passed"].get<bool>();
    }
    mixing_ok = ok;
    line(5, "cat map universal limit", ok, fmt("entry t = %.0f, %.1f s", entry, r.seconds));

    double worst = 0.0;
    bool both = true;
    int seen = 0;
    for (const auto& c : r.report.cross_checks) {
      const bool egorov = c.what.find("Egorov") != std::string::npos || c.what.find("conjugated") != std::string::npos;
      if (!egorov) continue;
      ++seen;
      worst = std::max(worst, std::abs(c.fast - c.slow));
      both = both && c.tolerance <= kEgorovTol && c.ok();
    }
    line(6, "exact Egorov", both && seen >= 2 && worst <= kEgorovTol,
         fmt("worst defect %.3g over %.0f checks", worst, seen));
  });

  guarded(7, "counterexample", [&] {
    const auto r = run("catmap-counterexample.cfg");
    double min_dev = 0.0;
    bool ok = r.report.passed;
    for (const auto& run : r.report.summary["runs"]) {
      min_dev = run["min_deviation"].get<double>();
      ok = ok && min_dev >= kDeviationMin && run["counterexample_success"].get<bool>();
    }
    line(7, "counterexample", ok && mixing_ok,
         fmt("stable line min deviation %.3f, transversal state converges %.0f", min_dev, mixing_ok ? 1.0 : 0.0));
  });

  guarded(8, "stable-manifold series", [] {
    const auto r = run("stable-manifold.cfg");
    const auto& s = r.report.summary;
    const double rate = s["fitted_exponent"].get<double>();
    const double lambda = s["lambda"].get<double>();
    const double per = s["periodicity_error"].get<double>();
    line(8, "stable-manifold series",
         rate >= kExponentRatioMin * lambda && per <= kPeriodicityTol && checks_ok(r.report),
         fmt("exponent %.4f vs lambda %.4f, periodicity %.3g", rate, lambda, per));
  });

  guarded(9, "infrastructure", [] {
    const Grid g(256, 1.0 / 64);
    const auto psi = random_band_limited(g, 11, 128);
    const auto prop = split_step_propagate(psi, parse_hamiltonian("pendulum-H(kappa=1)"), 10.0, 1e-3);
    const double drift = std::abs(prop.psi.norm2() - psi.norm2()) / psi.norm2();

    double round_trip = 0.0;
    for (int n : {64, 1024, 8192}) {
      const Grid gn(n, 1.0 / n);
      const auto v = random_band_limited(gn, 5, n / 2);
      const auto back = WaveFunction::from_momentum(gn, v.to_momentum());
      for (std::size_t j = 0; j < v.values().size(); ++j) round_trip = std::max(round_trip, std::abs(v[j] - back[j]));
    }

    const auto cfg = validate_config(load_config(std::string(LAGLAB_SOURCE_DIR) + "/configs/stationary-phase.cfg"));
    const bool identical = run_experiment(cfg).table.render() == run_experiment(cfg).table.render();

    const Symbol a = parse_symbol("cos(amp=1, m=1, n=1) + cos(amp=0.5, m=2, n=2, phase=0.3)");
    const auto band = random_band_limited(g, 17, 64);
    const auto fast = weyl_quantize(a, g).apply(band);
    const auto slow = weyl_dense_oracle(a, g).apply(band);
    double weyl = 0.0;
    for (std::size_t j = 0; j < band.values().size(); ++j) weyl = std::max(weyl, std::abs(fast[j] - slow[j]));

    line(9, "infrastructure",
         prop.steps == 10000 && drift <= kUnitarityTol && round_trip <= kRoundTripTol && identical &&
             weyl <= kModeSumTol,
         fmt("norm drift %.3g over 1e4 steps, round trip %.3g, csv identical %.0f, mode-sum vs dense %.3g", drift,
             round_trip, identical ? 1.0 : 0.0, weyl));
  });

  return failures == 0 ? 0 : 1;
}
