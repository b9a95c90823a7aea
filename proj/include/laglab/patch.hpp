#pragma once

#include <functional>

#include "laglab/catalog.hpp"
#include "laglab/symbols.hpp"

namespace laglab {

enum class ChartKind {
  PositionPeriodic,  // u = x on the whole circle, point (x, phi'(x))
  PositionInterval,  // u = x on [lo, hi]
  Action,            // u = I on [lo, hi], point (phi'(I), I)
};

/// One-dimensional Lagrangian patch: the graph of d phi with density |rho_0|^2.
///
/// Position charts read phi as phi(x) = phase(x, 0); the action chart reads
/// phi(I) = phase(0, I).
class LagrangianPatch {
 public:
  LagrangianPatch(ChartKind chart, Symbol phase, Amplitude amplitude);

  ChartKind chart() const noexcept { return chart_; }
  const Symbol& phase() const noexcept { return phase_; }
  const Amplitude& amplitude() const noexcept { return amplitude_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }

  double phase_at(double u) const;
  /// phi'(u): the momentum over a position chart, the angle over the action chart.
  double phase_slope(double u) const;
  PhasePoint embed(double u) const;
  cplx rho(double u) const { return amplitude_.value(u); }

 private:
  ChartKind chart_;
  Symbol phase_;
  Amplitude amplitude_;
  double lo_, hi_;
};

struct MassDensity {
  std::function<double(double)> weight;  // u -> |rho_0(u)|^2
  double mass = 0.0;
};

MassDensity mass_density(const LagrangianPatch& patch, int nodes = 2048);

/// (|sigma(psi)|^2)_m = \int e^{-imx} |rho_0(x)|^2 dx for |m| <= cutoff, on a
/// position chart. Index m + cutoff.
std::vector<cplx> mass_fourier(const LagrangianPatch& patch, int cutoff, int nodes = 4096);

}  // namespace laglab
