#include "laglab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "laglab/error.hpp"

namespace laglab {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw Error("CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i]))
        out += format_real(*d);
      else if (const auto* n = std::get_if<long long>(&row[i]))
        out += std::to_string(*n);
      else
        out += std::get<std::string>(row[i]);
    }
    out += '\n';
  }
  return out;
}

bool CrossCheck::ok() const { return std::abs(fast - slow) <= tolerance; }

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["passed"] = passed;
  j["summary"] = summary;
  auto& cc = j["cross_validation"] = nlohmann::json::array();
  for (const auto& c : cross_checks)
    cc.push_back({{"what", c.what}, {"fast", c.fast}, {"slow", c.slow}, {"abs_diff", std::abs(c.fast - c.slow)},
                  {"tolerance", c.tolerance}, {"ok", c.ok()}});
  j["warnings"] = warnings;
  j["provenance"] = {{"code_version", LAGLAB_VERSION}, {"config_origin", config_origin}, {"config", config_echo}};
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["provenance"]["timestamp"] = ts;
  return j;
}

WrittenReport write_report(const ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  WrittenReport w{(fs::path(dir) / (report.kind + ".csv")).string(), (fs::path(dir) / (report.kind + ".json")).string()};
  {
    std::ofstream f(w.csv_path, std::ios::binary);
    f << report.table.render();
    if (!f) throw Error("cannot write '" + w.csv_path + "'");
  }
  {
    std::ofstream f(w.json_path, std::ios::binary);
    f << report.to_json().dump(2) << '\n';
    if (!f) throw Error("cannot write '" + w.json_path + "'");
  }
  return w;
}

}  // namespace laglab
