#include "laglab/patch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "laglab/error.hpp"
#include "laglab/quadrature.hpp"

namespace laglab {

LagrangianPatch::LagrangianPatch(ChartKind chart, Symbol phase, Amplitude amplitude)
    : chart_(chart), phase_(std::move(phase)), amplitude_(std::move(amplitude)) {
  if (!amplitude_.value) throw ConfigError("patch amplitude has no value callable");
  if (chart_ == ChartKind::PositionPeriodic) {
    lo_ = 0.0;
    hi_ = 2.0 * std::numbers::pi;
    return;
  }
  lo_ = amplitude_.lo;
  hi_ = amplitude_.hi;
  if (!(hi_ > lo_)) throw ConfigError("patch parameter interval is empty");
  for (double u : {lo_, hi_}) {
    if (std::abs(amplitude_.value(u)) > 1e-12) {
      std::ostringstream os;
      os << "amplitude '" << amplitude_.name << "' does not vanish at chart endpoint " << u
         << " (|rho_0| = " << std::abs(amplitude_.value(u)) << ")";
      throw ConfigError(os.str());
    }
  }
  if (!phase_.has_gradient()) throw CapabilityError("patch phase '" + phase_.name() + "' needs an analytic gradient");
}

double LagrangianPatch::phase_at(double u) const {
  return chart_ == ChartKind::Action ? phase_.eval({0.0, u}).real() : phase_.eval({u, 0.0}).real();
}

double LagrangianPatch::phase_slope(double u) const {
  return chart_ == ChartKind::Action ? phase_.grad({0.0, u}).dxi.real() : phase_.grad({u, 0.0}).dx.real();
}

PhasePoint LagrangianPatch::embed(double u) const {
  if (chart_ == ChartKind::Action) return {phase_slope(u), u};
  return {u, phase_slope(u)};
}

MassDensity mass_density(const LagrangianPatch& patch, int nodes) {
  auto amp = patch.amplitude().value;
  MassDensity md;
  md.weight = [amp](double u) { return std::norm(amp(u)); };
  const auto rule = patch.chart() == ChartKind::PositionPeriodic ? trapezoid_periodic(nodes, patch.lo(), patch.hi())
                                                                  : gauss_legendre(nodes, patch.lo(), patch.hi());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) md.mass += rule.weights[i] * md.weight(rule.nodes[i]);
  return md;
}

std::vector<cplx> mass_fourier(const LagrangianPatch& patch, int cutoff, int nodes) {
  if (patch.chart() == ChartKind::Action) throw ConfigError("mass Fourier coefficients need a position chart");
  nodes = std::max(nodes, 8 * cutoff + 16);
  const auto rule = patch.chart() == ChartKind::PositionPeriodic ? trapezoid_periodic(nodes, patch.lo(), patch.hi())
                                                                  : gauss_legendre(nodes, patch.lo(), patch.hi());
  std::vector<cplx> out(static_cast<std::size_t>(2 * cutoff + 1));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double w = rule.weights[i] * std::norm(patch.rho(x));
    for (int m = -cutoff; m <= cutoff; ++m) out[static_cast<std::size_t>(m + cutoff)] += w * std::polar(1.0, -m * x);
  }
  return out;
}

}  // namespace laglab
