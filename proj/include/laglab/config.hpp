#pragma once

#include <map>
#include <string>
#include <vector>

namespace laglab {

/// Experiment configuration: one `[kind]` section of `key = value` lines,
/// `#` comments. Values stay raw until validated against the kind's schema.
struct RawConfig {
  std::string kind;
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
  std::string text;
  std::string origin;
};

RawConfig parse_config(const std::string& text, const std::string& origin = "<string>");
/// Throws ConfigIoError when the file cannot be read.
RawConfig load_config(const std::string& path);

enum class FieldType { Real, RealList, Int, IntList, Text, Choice, Symbol, Amplitude, Hamiltonian, Call, Matrix };

struct FieldSpec {
  std::string name;
  FieldType type = FieldType::Real;
  std::string fallback;  // default raw value; empty means required
  std::string help;
  std::vector<std::string> choices;
  double lo = -1e300, hi = 1e300;  // range for numeric fields and list entries
};

/// Typed view of a validated configuration. Every key of the schema is present.
class ExperimentConfig {
 public:
  const std::string& kind() const noexcept { return kind_; }
  const std::string& echo() const noexcept { return echo_; }
  const std::map<std::string, std::string>& resolved() const noexcept { return raw_; }

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  const std::string& text(const std::string& key) const;

 private:
  friend ExperimentConfig validate_config(const RawConfig& raw);
  std::string kind_;
  std::string echo_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, double> reals_;
  std::map<std::string, long long> ints_;
  std::map<std::string, std::vector<double>> real_lists_;
  std::map<std::string, std::vector<long long>> int_lists_;
};

const std::vector<std::string>& experiment_kinds();
const std::vector<FieldSpec>& schema_for(const std::string& kind);

/// Checks every field; throws ConfigError listing each offending field.
ExperimentConfig validate_config(const RawConfig& raw);

}  // namespace laglab
