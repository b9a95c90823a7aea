#include "laglab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "laglab/catalog.hpp"
#include "laglab/catmap.hpp"
#include "laglab/error.hpp"

namespace laglab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

FieldSpec real(std::string n, std::string def, std::string help, double lo = -1e300, double hi = 1e300) {
  return {std::move(n), FieldType::Real, std::move(def), std::move(help), {}, lo, hi};
}
FieldSpec reals(std::string n, std::string def, std::string help, double lo = -1e300, double hi = 1e300) {
  return {std::move(n), FieldType::RealList, std::move(def), std::move(help), {}, lo, hi};
}
FieldSpec integer(std::string n, std::string def, std::string help, double lo = -1e18, double hi = 1e18) {
  return {std::move(n), FieldType::Int, std::move(def), std::move(help), {}, lo, hi};
}
FieldSpec integers(std::string n, std::string def, std::string help, double lo = -1e18, double hi = 1e18) {
  return {std::move(n), FieldType::IntList, std::move(def), std::move(help), {}, lo, hi};
}
FieldSpec typed(std::string n, FieldType t, std::string def, std::string help) {
  return {std::move(n), t, std::move(def), std::move(help), {}, -1e300, 1e300};
}
FieldSpec choice(std::string n, std::string def, std::vector<std::string> opts, std::string help) {
  return {std::move(n), FieldType::Choice, std::move(def), std::move(help), std::move(opts), -1e300, 1e300};
}

void add_common(std::vector<FieldSpec>& s, const std::string& kind) {
  s.push_back(typed("output", FieldType::Text, "out/" + kind, "report directory (LAGLAB_OUTPUT_DIR overrides)"));
  s.push_back(integer("seed", "0", "seed of the counter-based generator for randomized checks", 0, 9.2e18));
}

std::map<std::string, std::vector<FieldSpec>> build_schemas() {
  std::map<std::string, std::vector<FieldSpec>> m;
  auto& sp = m["stationary-phase"];
  sp = {
      reals("hbar", "2^-6, 2^-7, 2^-8, 2^-9, 2^-10, 2^-11", "dyadic hbar values, at least 4", 1e-6, 1.0),
      real("grid_scale", "2", "N = grid_scale / hbar (power of two, N <= 8192)", 1e-6, 1e6),
      choice("chart", "interval", {"interval", "periodic"}, "position chart of the patch"),
      typed("phase", FieldType::Symbol, "plane-sin(p=0, kappa=0.5)", "generating phase phi(x)"),
      typed("amplitude", FieldType::Amplitude, "bump(center=1.5, width=1, twist=2)", "amplitude rho_0"),
      typed("observable", FieldType::Symbol, "cos(amp=1, m=1, n=1)", "observable a(x, xi)"),
      integer("nodes", "1024", "transport quadrature nodes", 16, 4e6),
      real("slope_min", "0.8", "acceptance window for the log-log slope"),
      real("slope_max", "1.2", "acceptance window for the log-log slope"),
  };
  auto& rs = m["reduction-scan"];
  rs = {
      typed("hamiltonian", FieldType::Hamiltonian, "rotor-H", "rotor-H or pendulum-H(kappa)"),
      reals("hbar", "2^-7, 2^-8, 2^-9, 2^-10", "dyadic hbar values, at least 2", 1e-6, 1.0),
      real("grid_scale", "2", "N = grid_scale / hbar", 1e-6, 1e6),
      choice("chart", "interval", {"interval", "periodic"}, "position chart of the patch"),
      typed("phase", FieldType::Symbol, "plane-sin(p=0.5, kappa=0.3)", "generating phase phi(x)"),
      typed("amplitude", FieldType::Amplitude, "bump(center=pi, width=1.2, twist=1)", "amplitude rho_0"),
      typed("observable", FieldType::Symbol, "cos(amp=1, m=1)", "observable a(x, xi)"),
      real("t_max", "100", "last time of the scan", 0, 1e4),
      real("t_step", "1", "spacing of the time grid", 1e-6, 1e4),
      real("dt", "1e-3", "Verlet and split-step time step", 1e-9, 1),
      integer("nodes", "256", "minimum transport quadrature nodes", 16, 4e6),
      real("power_residual_max", "0.5", "largest admissible rms log residual of the power-law fit"),
      real("exp_gain_max", "10", "exponential fit may not beat the power fit by more than this SSR factor"),
  };
  auto& it = m["integrable-torus"];
  it = {
      reals("hbar", "2^-12, 2^-13", "two or more hbar values", 1e-6, 1.0),
      integer("grid_n", "8192", "grid size N", 64, 8192),
      real("action", "0.375", "invariant circle xi = I0; I0 / hbar must be an integer"),
      typed("amplitude", FieldType::Amplitude, "cosine(eps=0.5)", "periodic amplitude on the circle"),
      typed("observable", FieldType::Symbol, "cos(amp=1, m=1)", "observable a(x, xi)"),
      integer("cutoff", "32", "Fourier cutoff M", 0, 4096),
      real("t_max", "50", "last time; clipped to hbar^{-1/2}", 0, 1e4),
      real("t_step", "0.1", "spacing of the time grid", 1e-6, 1e4),
      real("c_ratio_max", "3", "largest admissible ratio of fitted constants across hbar", 1, 1e6),
  };
  auto& tr = m["integrable-transversal"];
  tr = {
      reals("hbar", "2^-10", "hbar values", 1e-6, 1.0),
      real("grid_scale", "2", "N = grid_scale / hbar", 1e-6, 1e6),
      typed("phase", FieldType::Symbol, "shear(x0=0)", "phase phi(I) over the action chart"),
      typed("amplitude", FieldType::Amplitude, "gauss(center=0, width=0.04)", "amplitude over the action chart"),
      typed("observable", FieldType::Symbol, "cos(amp=1, m=1)", "observable a(x, xi)"),
      integer("cutoff", "32", "Fourier cutoff M for a_0(I)", 0, 4096),
      real("t_min", "10", "start of the fit window", 1e-6, 1e5),
      real("t_max", "200", "end of the fit window", 1e-6, 1e5),
      real("t_step", "1", "spacing of the time grid", 1e-6, 1e4),
      integer("nodes", "512", "minimum transport quadrature nodes", 16, 4e6),
      real("p_min", "0.9", "smallest admissible power exponent"),
  };
  auto& cm = m["catmap-mixing"];
  cm = {
      typed("matrix", FieldType::Matrix, "2, 1, 1, 1", "A as a11, a12, a21, a22"),
      integers("n", "1024", "quantization integers N", 3, 1 << 16),
      typed("observable", FieldType::Symbol,
            "constant(c=0.5) + cos(m=1, n=0) + cos(m=0, n=1) + cos(m=1, n=1)",
            "trig polynomial; mode (m, n) means e^{2 pi i (m q + n p)}"),
      typed("state", FieldType::Call, "momentum(k=3)",
            "momentum(k), momentum-bump(k, kappa, center) or line(c, center, width)"),
      typed("line_slope", FieldType::Text, "0", "slope alpha of line states: a number, 'stable' or 'unstable'"),
      integer("slope_max_den", "1000", "denominator bound when approximating an irrational slope", 1, 1e6),
      choice("expect", "converge", {"converge", "diverge"}, "converge: mixing run; diverge: counterexample run"),
      real("tube", "1e-6", "tube half-width around the universal limit", 0, 1e300),
      real("t0_max", "6", "latest admissible tube entry time", 0, 1e4),
      real("deviation_min", "0.1", "counterexample: smallest deviation that must persist", 0, 1e300),
      integer("egorov_check_n", "128", "N of the propagated-vs-conjugated cross-check", 3, 4096),
      integer("egorov_check_t", "12", "last t of the propagated-vs-conjugated cross-check", 0, 64),
  };
  auto& sm = m["stable-manifold"];
  sm = {
      real("period", "1", "orbit period T", 1e-9, 1e9),
      real("lambda", "0.5", "contraction rate", 1e-9, 1e3),
      typed("observable", FieldType::Symbol, "cos(amp=1, m=1) + momentum(c=1)",
            "observable; evaluated at x = 2 pi r / T, xi = y"),
      real("density_eps", "1", "sigma(r, y) = g(y) (1 + eps cos(2 pi r / T))"),
      real("y_center", "0.5", "centre of the bump g(y)"),
      real("y_width", "0.4", "half-width of the bump g(y)", 1e-9, 1e9),
      integer("cutoff", "8", "orbit Fourier cutoff K", 0, 4096),
      real("t_max", "20", "last time", 0, 1e4),
      real("t_step", "1", "spacing of the time grid", 1e-6, 1e4),
      integer("r_nodes", "256", "orbit quadrature nodes", 16, 1e6),
      integer("y_nodes", "96", "stable-direction quadrature nodes", 4, 1e6),
      real("exponent_ratio_min", "0.9", "fitted exponent must reach this fraction of lambda"),
      real("periodicity_tol", "1e-12", "tolerance of value(t) = value(t + T)"),
  };
  for (auto& [k, v] : m) add_common(v, k);
  return m;
}

const std::map<std::string, std::vector<FieldSpec>>& schemas() {
  static const auto s = build_schemas();
  return s;
}

bool is_dyadic(double h) {
  const double e = std::log2(h);
  return std::abs(e - std::round(e)) < 1e-12;
}

}  // namespace

RawConfig parse_config(const std::string& text, const std::string& origin) {
  RawConfig cfg;
  cfg.text = text;
  cfg.origin = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool seen_section = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      if (seen_section) throw ConfigError(where + "only one [kind] section is allowed");
      cfg.kind = trim(line.substr(1, line.size() - 2));
      seen_section = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    if (!seen_section) throw ConfigError(where + "key before the [kind] section header");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (cfg.values.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
    cfg.values[key] = value;
    cfg.lines[key] = lineno;
  }
  if (!seen_section) throw ConfigError(origin + ": missing [kind] section header");
  return cfg;
}

RawConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigIoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw ConfigIoError("error while reading config file '" + path + "'");
  return parse_config(ss.str(), path);
}

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> k = {"stationary-phase", "reduction-scan",  "integrable-torus",
                                             "integrable-transversal", "catmap-mixing", "stable-manifold"};
  return k;
}

const std::vector<FieldSpec>& schema_for(const std::string& kind) {
  const auto it = schemas().find(kind);
  if (it == schemas().end()) throw ConfigError("unknown experiment kind '" + kind + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const { return reals_.at(key); }
long long ExperimentConfig::integer(const std::string& key) const { return ints_.at(key); }
std::vector<double> ExperimentConfig::reals(const std::string& key) const { return real_lists_.at(key); }
std::vector<long long> ExperimentConfig::integers(const std::string& key) const { return int_lists_.at(key); }
const std::string& ExperimentConfig::text(const std::string& key) const { return raw_.at(key); }

ExperimentConfig validate_config(const RawConfig& raw) {
  ExperimentConfig cfg;
  std::vector<std::string> errors;
  const std::vector<FieldSpec>* schema = nullptr;
  try {
    schema = &schema_for(raw.kind);
  } catch (const ConfigError&) {
    std::string kinds;
    for (const auto& k : experiment_kinds()) kinds += (kinds.empty() ? "" : ", ") + k;
    throw ConfigError(raw.origin + ": section [" + raw.kind + "]: unknown experiment kind (expected one of " + kinds + ")");
  }
  cfg.kind_ = raw.kind;
  cfg.echo_ = raw.text;

  std::map<std::string, bool> known;
  for (const auto& f : *schema) known[f.name] = true;
  for (const auto& [k, v] : raw.values)
    if (!known.count(k)) errors.push_back("field '" + k + "': not part of the [" + raw.kind + "] schema");

  auto range_error = [](const FieldSpec& f, double v) {
    std::ostringstream os;
    if (v < f.lo || v > f.hi) os << "value " << v << " outside [" << f.lo << ", " << f.hi << "]";
    return os.str();
  };

  for (const auto& f : *schema) {
    const auto it = raw.values.find(f.name);
    const std::string value = it != raw.values.end() ? it->second : f.fallback;
    const std::string label = "field '" + f.name + "'" +
                              (it != raw.values.end() ? " (line " + std::to_string(raw.lines.at(f.name)) + ")" : "");
    if (value.empty()) {
      errors.push_back(label + ": required value missing");
      continue;
    }
    cfg.raw_[f.name] = value;
    try {
      switch (f.type) {
        case FieldType::Real: {
          const double v = parse_number(value);
          if (!std::isfinite(v)) throw ConfigError("not finite");
          if (auto e = range_error(f, v); !e.empty()) throw ConfigError(e);
          cfg.reals_[f.name] = v;
          break;
        }
        case FieldType::Int: {
          const double v = parse_number(value);
          if (v != std::round(v)) throw ConfigError("must be an integer");
          if (auto e = range_error(f, v); !e.empty()) throw ConfigError(e);
          cfg.ints_[f.name] = static_cast<long long>(v);
          break;
        }
        case FieldType::RealList: {
          std::vector<double> out;
          for (const auto& item : split_list(value)) {
            const double v = parse_number(item);
            if (auto e = range_error(f, v); !e.empty()) throw ConfigError(e);
            out.push_back(v);
          }
          if (out.empty()) throw ConfigError("empty list");
          cfg.real_lists_[f.name] = out;
          break;
        }
        case FieldType::IntList: {
          std::vector<long long> out;
          for (const auto& item : split_list(value)) {
            const double v = parse_number(item);
            if (v != std::round(v)) throw ConfigError("entry '" + item + "' must be an integer");
            if (auto e = range_error(f, v); !e.empty()) throw ConfigError(e);
            out.push_back(static_cast<long long>(v));
          }
          if (out.empty()) throw ConfigError("empty list");
          cfg.int_lists_[f.name] = out;
          break;
        }
        case FieldType::Choice: {
          bool ok = false;
          for (const auto& c : f.choices) ok = ok || c == value;
          if (!ok) {
            std::string opts;
            for (const auto& c : f.choices) opts += (opts.empty() ? "" : ", ") + c;
            throw ConfigError("'" + value + "' is not one of {" + opts + "}");
          }
          break;
        }
        case FieldType::Symbol:
          parse_symbol(value);
          break;
        case FieldType::Amplitude:
          parse_amplitude(value);
          break;
        case FieldType::Hamiltonian:
          parse_hamiltonian(value);
          break;
        case FieldType::Call:
          parse_call(value);
          break;
        case FieldType::Matrix: {
          const auto items = split_list(value);
          if (items.size() != 4) throw ConfigError("expected four integers a11, a12, a21, a22");
          IMat2 a{};
          for (int i = 0; i < 4; ++i) {
            const double v = parse_number(items[static_cast<std::size_t>(i)]);
            if (v != std::round(v)) throw ConfigError("matrix entries must be integers");
            a[i / 2][i % 2] = static_cast<long long>(v);
          }
          CatMap check(a);
          break;
        }
        case FieldType::Text:
          break;
      }
    } catch (const Error& e) {
      errors.push_back(label + ": " + e.what());
    }
  }

  // Cross-field rules.
  auto has = [&](const char* k) { return cfg.real_lists_.count(k) > 0; };
  if (has("hbar")) {
    const auto& hb = cfg.real_lists_.at("hbar");
    if (raw.kind == "stationary-phase" && hb.size() < 4) errors.push_back("field 'hbar': need at least 4 values");
    if (raw.kind == "reduction-scan" && hb.size() < 2) errors.push_back("field 'hbar': need at least 2 values");
    if (raw.kind == "integrable-torus" && hb.size() < 2) errors.push_back("field 'hbar': need at least 2 values");
    if (raw.kind == "stationary-phase" || raw.kind == "reduction-scan")
      for (double h : hb)
        if (!is_dyadic(h)) errors.push_back("field 'hbar': value " + std::to_string(h) + " is not a power of two");
    if (cfg.reals_.count("grid_scale")) {
      for (double h : hb) {
        const double n = cfg.reals_.at("grid_scale") / h;
        const bool pow2 = n >= 64 && n <= 8192 && std::abs(std::log2(n) - std::round(std::log2(n))) < 1e-12;
        if (!pow2)
          errors.push_back("field 'grid_scale': grid_scale / hbar = " + std::to_string(n) +
                           " is not a power of two in [64, 8192]");
      }
    }
  }
  if (raw.kind == "catmap-mixing") {
    const auto& s = cfg.raw_["line_slope"];
    if (s != "stable" && s != "unstable") {
      try {
        parse_number(s);
      } catch (const Error& e) {
        errors.push_back("field 'line_slope': " + std::string(e.what()));
      }
    }
  }
  if (cfg.reals_.count("slope_min") && cfg.reals_.count("slope_max") && cfg.reals_["slope_min"] > cfg.reals_["slope_max"])
    errors.push_back("field 'slope_min': exceeds slope_max");
  if (cfg.reals_.count("t_min") && cfg.reals_.count("t_max") && cfg.reals_["t_min"] >= cfg.reals_["t_max"])
    errors.push_back("field 't_min': must be below t_max");

  if (!errors.empty()) {
    std::string msg = raw.origin + ": invalid [" + raw.kind + "] configuration";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

}  // namespace laglab
