#pragma once

#include <vector>

namespace laglab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Equispaced trapezoid rule for a periodic integrand on [lo, hi).
QuadratureRule trapezoid_periodic(int n, double lo, double hi);

/// Node count resolving exp(i max_mode (1 + |t| slope) u) over a parameter
/// window of the given width with four nodes per radian of phase, never below floor.
int nyquist_nodes(int max_mode, double t, double slope, double width, int floor);

}  // namespace laglab
