#include "laglab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "laglab/error.hpp"
#include "laglab/fft.hpp"
#include "laglab/kernels.hpp"

namespace laglab {

Grid::Grid(int n, double hbar) : n_(n), hbar_(hbar) {
  if (n < 64 || n > 8192 || (n & (n - 1)) != 0)
    throw ConfigError("grid size N = " + std::to_string(n) + " must be a power of two in [64, 8192]");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("hbar must be positive and finite");
}

double Grid::dx() const noexcept { return 2.0 * std::numbers::pi / n_; }
double Grid::x(int j) const noexcept { return dx() * j; }

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.size()))
    throw ConfigError("wavefunction length does not match the grid");
}

double WaveFunction::norm2() const {
  return grid_.dx() * kernels::omp::inner(values_, values_).real();
}

std::vector<cplx> WaveFunction::to_momentum() const {
  const int n = grid_.size();
  std::vector<cplx> raw(values_.size());
  fft::forward(values_, raw);
  std::vector<cplx> out(raw.size());
  const double inv = 1.0 / n;
  for (int s = 0; s < n; ++s) {
    const int k = grid_.k_of_slot(s);
    out[static_cast<std::size_t>(s)] = inv * raw[static_cast<std::size_t>((k + n) % n)];
  }
  return out;
}

WaveFunction WaveFunction::from_momentum(const Grid& grid, const std::vector<cplx>& coeffs) {
  const int n = grid.size();
  if (coeffs.size() != static_cast<std::size_t>(n)) throw ConfigError("momentum vector length does not match the grid");
  std::vector<cplx> raw(coeffs.size());
  for (int s = 0; s < n; ++s) raw[static_cast<std::size_t>((grid.k_of_slot(s) + n) % n)] = coeffs[static_cast<std::size_t>(s)];
  fft::backward(raw, raw);
  return WaveFunction(grid, std::move(raw));
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw ConfigError(std::string(where) + ": grid mismatch");
}

}  // namespace laglab
