#pragma once

#include <vector>

#include "laglab/symbols.hpp"

namespace laglab {

/// Periodic grid x_j = 2 pi j / N on the circle with momentum lattice
/// xi_k = hbar k, k = -N/2 .. N/2-1.
///
/// Momentum-space vectors are stored centred: slot s holds k = s - N/2.
class Grid {
 public:
  Grid(int n, double hbar);

  int size() const noexcept { return n_; }
  double hbar() const noexcept { return hbar_; }
  double dx() const noexcept;
  double x(int j) const noexcept;
  int k_of_slot(int s) const noexcept { return s - n_ / 2; }
  int slot_of_k(int k) const noexcept { return k + n_ / 2; }
  bool has_k(int k) const noexcept { return k >= -n_ / 2 && k < n_ / 2; }
  double xi(int slot) const noexcept { return hbar_ * k_of_slot(slot); }

  bool operator==(const Grid& o) const noexcept { return n_ == o.n_ && hbar_ == o.hbar_; }

 private:
  int n_;
  double hbar_;
};

/// Complex amplitudes psi_j at the grid nodes; ||psi||^2 = dx sum |psi_j|^2.
class WaveFunction {
 public:
  explicit WaveFunction(Grid grid) : grid_(grid), values_(static_cast<std::size_t>(grid.size())) {}
  WaveFunction(Grid grid, std::vector<cplx> values);

  const Grid& grid() const noexcept { return grid_; }
  std::vector<cplx>& values() noexcept { return values_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx& operator[](std::size_t j) { return values_[j]; }
  const cplx& operator[](std::size_t j) const { return values_[j]; }

  double norm2() const;

  /// Centred coefficients psi_hat_k = (1/N) sum_j psi_j e^{-i k x_j}.
  std::vector<cplx> to_momentum() const;
  static WaveFunction from_momentum(const Grid& grid, const std::vector<cplx>& coeffs);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

/// Throws ConfigError unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace laglab
