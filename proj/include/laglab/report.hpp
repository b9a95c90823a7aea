#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace laglab {

using Cell = std::variant<double, long long, std::string>;

/// Plain CSV table. Reals are written with 17 significant digits so equal
/// runs produce identical bytes.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns = {}) : columns_(std::move(columns)) {}
  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::string render() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double v);

/// A value recomputed on a slow independent path.
struct CrossCheck {
  std::string what;
  double fast = 0.0;
  double slow = 0.0;
  double tolerance = 0.0;
  bool ok() const;
};

struct ExperimentReport {
  std::string kind;
  CsvTable table;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<CrossCheck> cross_checks;
  std::vector<std::string> warnings;
  bool passed = false;
  std::string config_echo;
  std::string config_origin;

  nlohmann::json to_json() const;
};

struct WrittenReport {
  std::string csv_path;
  std::string json_path;
};

/// Writes <dir>/<kind>.csv and <dir>/<kind>.json, creating dir.
WrittenReport write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace laglab
