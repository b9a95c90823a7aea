#include "laglab/transport.hpp"

#include <algorithm>
#include <cmath>

#include "laglab/error.hpp"
#include "laglab/kernels.hpp"
#include "laglab/quadrature.hpp"

namespace laglab {

cplx transport_integral(const LagrangianPatch& patch, const Symbol& a, const HamiltonianFlow& flow, double t,
                        int nodes) {
  if (nodes < 16) throw ConfigError("transport_integral needs at least 16 nodes");
  const auto rule = patch.chart() == ChartKind::PositionPeriodic ? trapezoid_periodic(nodes, patch.lo(), patch.hi())
                                                                  : gauss_legendre(nodes, patch.lo(), patch.hi());
  const auto n = rule.nodes.size();
  std::vector<PhasePoint> pts(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = patch.embed(rule.nodes[i]);
    w[i] = rule.weights[i] * std::norm(patch.rho(rule.nodes[i]));
  }
  flow.evolve_batch(pts, t);
  std::vector<cplx> vals(n);
  kernels::omp::tabulate(n, [&](std::size_t i) { return a.eval(pts[i]); }, vals);
  return kernels::omp::weighted_sum(w, vals);
}

int transport_nodes(const LagrangianPatch& patch, int max_mode, double t, int floor) {
  double slope = 1.0;
  if (patch.chart() != ChartKind::Action) {
    // Steepest d xi/du across the chart, sampled.
    slope = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double u = patch.lo() + patch.width() * i / 256.0;
      const double h = 1e-5 * std::max(1.0, patch.width());
      slope = std::max(slope, std::abs(patch.phase_slope(u + h) - patch.phase_slope(u - h)) / (2.0 * h));
    }
  } else {
    for (int i = 0; i <= 256; ++i) {
      const double u = patch.lo() + patch.width() * i / 256.0;
      const double h = 1e-5 * std::max(1.0, patch.width());
      slope = std::max(slope, 1.0 + std::abs(patch.phase_slope(u + h) - patch.phase_slope(u - h)) / (2.0 * h));
    }
  }
  return nyquist_nodes(std::max(max_mode, 1), t, slope, patch.width(), floor);
}

cplx torus_prediction(const FourierTable& a_coeffs, const std::vector<cplx>& mass_coeffs, double omega, double t) {
  const int cutoff = a_coeffs.cutoff;
  const int mass_cut = static_cast<int>(mass_coeffs.size() / 2);
  cplx sum{0.0};
  for (int m = -cutoff; m <= cutoff; ++m) {
    if (std::abs(m) > mass_cut) continue;
    sum += a_coeffs.at(m) * mass_coeffs[static_cast<std::size_t>(mass_cut - m)] * std::polar(1.0, m * omega * t);
  }
  return sum;
}

cplx torus_prediction(double action, const Symbol& a, const std::vector<cplx>& mass_coeffs,
                      const std::function<double(double)>& omega, double t, int cutoff) {
  if (mass_coeffs.size() < static_cast<std::size_t>(2 * cutoff + 1))
    throw ConfigError("torus_prediction: mass coefficients do not cover the cutoff");
  return torus_prediction(fourier_coefficients(a, cutoff, action), mass_coeffs, omega(action), t);
}

double transversal_limit(const LagrangianPatch& patch, const Symbol& a, int cutoff, int nodes) {
  if (patch.chart() != ChartKind::Action) throw ConfigError("transversal_limit needs an action chart");
  const auto rule = gauss_legendre(nodes, patch.lo(), patch.hi());
  std::vector<double> w(rule.nodes.size());
  std::vector<cplx> vals(rule.nodes.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rule.weights[i] * std::norm(patch.rho(rule.nodes[i]));
  kernels::omp::tabulate(vals.size(), [&](std::size_t i) { return fourier_coefficients(a, cutoff, rule.nodes[i]).at(0); },
                         vals);
  return kernels::omp::weighted_sum(w, vals).real();
}

}  // namespace laglab
