#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "laglab/config.hpp"
#include "laglab/report.hpp"
#include "laglab/symbols.hpp"

namespace laglab::detail {

inline ExperimentReport start_report(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  ExperimentReport r;
  r.kind = cfg.kind();
  r.table = CsvTable(std::move(columns));
  r.config_echo = cfg.echo();
  nlohmann::json resolved = nlohmann::json::object();
  for (const auto& [k, v] : cfg.resolved()) resolved[k] = v;
  r.summary["resolved_config"] = resolved;
  return r;
}

inline int grid_size(double scale, double hbar) { return static_cast<int>(std::lround(scale / hbar)); }

/// t0, t0 + step, ... up to t1 inclusive (within 1e-9 relative slack).
inline std::vector<double> time_grid(double t0, double t1, double step) {
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((t1 - t0) / step + 1e-9));
  for (long long i = 0; i <= n; ++i) out.push_back(t0 + double(i) * step);
  return out;
}

/// Highest |m| + |n| over an angle-Fourier or character representation; 1 if unknown.
int max_mode(const Symbol& a);

/// Running maximum of v.
inline std::vector<double> running_max(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = m = std::max(m, v[i]);
  return out;
}

inline nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace laglab::detail
