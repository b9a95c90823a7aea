#pragma once

#include <functional>
#include <vector>

#include "laglab/symbols.hpp"

namespace laglab {

/// Model flow near a periodic orbit: (r, y) -> (r + t mod T, e^{-lambda t} y).
struct StableManifoldModel {
  double period = 1.0;
  double lambda = 1.0;

  PhasePoint evolve(PhasePoint ry, double t) const;
};

using Field2 = std::function<cplx(double r, double y)>;

/// Density on [0, T) x [y_lo, y_hi], zero outside.
struct ModelDensity {
  Field2 value;
  double y_lo = -1.0;
  double y_hi = 1.0;
};

struct QuadGrid2 {
  int r_nodes = 256;  // trapezoid over the orbit
  int y_nodes = 96;   // Gauss-Legendre across the stable direction
};

struct OrbitSeries {
  double period = 1.0;
  int cutoff = 0;
  std::vector<cplx> a;      // (1/T) \int a(r, 0) e^{-2 pi i k r/T} dr, index k + cutoff
  std::vector<cplx> sigma;  // \int\int sigma(r, y) e^{2 pi i k r/T} dy dr
  std::vector<cplx> b;      // a_k sigma_k

  cplx value(double t) const;
};

OrbitSeries stable_manifold_series(const StableManifoldModel& model, const Field2& a, const ModelDensity& sigma,
                                   int cutoff, const QuadGrid2& quad = {});

/// \int\int a(Phi^t(r, y)) sigma(r, y) dr dy by direct 2D quadrature.
cplx stable_manifold_transport(const StableManifoldModel& model, const Field2& a, const ModelDensity& sigma, double t,
                               const QuadGrid2& quad = {});

}  // namespace laglab
