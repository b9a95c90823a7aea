#include "laglab/cli.hpp"

#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "laglab/catalog.hpp"
#include "laglab/config.hpp"
#include "laglab/error.hpp"
#include "laglab/experiments.hpp"
#include "laglab/report.hpp"

#ifndef LAGLAB_VERSION
#define LAGLAB_VERSION "0.0.0"
#endif

namespace laglab {
namespace {

std::string output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("LAGLAB_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return cfg.text("output");
}

int do_run(const std::string& path, std::ostream& out) {
  const auto cfg = validate_config(load_config(path));
  const auto report = run_experiment(cfg);
  const auto written = write_report(report, output_dir(cfg));
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  for (const auto& c : report.cross_checks)
    out << (c.ok() ? "ok   " : "FAIL ") << c.what << ": |fast - slow| = " << format_real(std::abs(c.fast - c.slow))
        << " (tol " << format_real(c.tolerance) << ")\n";
  out << report.kind << ": " << (report.passed ? "PASS" : "FAIL") << '\n'
      << "csv:  " << written.csv_path << '\n'
      << "json: " << written.json_path << '\n';
  return report.passed ? kExitPass : kExitFail;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiclassical transport and cat-map mixing harness", "laglab"};
  app.require_subcommand(1);
  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_path, "Config file")->required();
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Config file")->required();
  auto* list = app.add_subcommand("list-catalog", "List built-in symbols, amplitudes and Hamiltonians");
  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*version) {
      out << "laglab " << LAGLAB_VERSION << '\n';
      return kExitPass;
    }
    if (*list) {
      for (const auto& name : catalog_listing()) out << name << '\n';
      return kExitPass;
    }
    if (*validate) {
      validate_config(load_config(validate_path));
      out << "OK\n";
      return kExitPass;
    }
    if (*run) return do_run(run_path, out);
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace laglab
