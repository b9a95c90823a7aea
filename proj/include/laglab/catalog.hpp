#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "laglab/symbols.hpp"

namespace laglab {

/// One `name(key=value, ...)` item from a configuration value.
struct CallSpec {
  std::string name;
  std::map<std::string, double> args;
};

/// Splits `a(...) + b(...)` into its terms. No other operators are accepted.
std::vector<CallSpec> parse_call_sum(const std::string& text);
CallSpec parse_call(const std::string& text);

/// Reads a real literal: plain decimals, `p/q`, `2^-6`, `pi`, `0.5*pi`.
double parse_number(const std::string& text);

/// Builds a catalog symbol; a sum of catalog terms yields the summed symbol.
Symbol make_symbol(const CallSpec& spec);
Symbol parse_symbol(const std::string& text);

/// Amplitude rho_0 on a chart parameter domain [lo, hi].
struct Amplitude {
  std::string name;
  std::function<cplx(double)> value;
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;  // full-circle chart, no endpoint decay required
};

Amplitude make_amplitude(const CallSpec& spec);
Amplitude parse_amplitude(const std::string& text);

/// H = xi^2/2 + V(x); `free_motion` when V vanishes identically.
struct SeparableHamiltonian {
  Symbol symbol;
  std::function<double(double)> potential;
  std::function<double(double)> force;  // -V'(x)
  bool free_motion = false;
  double potential_bound = 0.0;  // max |V|
};

SeparableHamiltonian make_hamiltonian(const CallSpec& spec);
SeparableHamiltonian parse_hamiltonian(const std::string& text);

/// Catalog entries with their parameters, for `list-catalog`.
std::vector<std::string> catalog_listing();

}  // namespace laglab
