#include "laglab/stable_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "laglab/error.hpp"
#include "laglab/kernels.hpp"
#include "laglab/quadrature.hpp"

namespace laglab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_model(const StableManifoldModel& m) {
  if (!(m.period > 0.0) || !(m.lambda > 0.0)) throw ConfigError("stable-manifold model needs period > 0 and lambda > 0");
}

}  // namespace

PhasePoint StableManifoldModel::evolve(PhasePoint ry, double t) const {
  double r = std::fmod(ry.x + t, period);
  if (r < 0.0) r += period;
  return {r, std::exp(-lambda * t) * ry.xi};
}

cplx OrbitSeries::value(double t) const {
  // Reduce t modulo the period so the series is periodic to round-off.
  double tr = std::fmod(t, period);
  if (tr < 0.0) tr += period;
  cplx s{0.0};
  for (int k = -cutoff; k <= cutoff; ++k)
    s += b[static_cast<std::size_t>(k + cutoff)] * std::polar(1.0, kTwoPi * k * tr / period);
  return s;
}

OrbitSeries stable_manifold_series(const StableManifoldModel& model, const Field2& a, const ModelDensity& sigma,
                                   int cutoff, const QuadGrid2& quad) {
  check_model(model);
  if (cutoff < 0) throw ConfigError("series cutoff must be nonnegative");
  const double T = model.period;
  OrbitSeries out;
  out.period = T;
  out.cutoff = cutoff;
  const auto nk = static_cast<std::size_t>(2 * cutoff + 1);
  out.a.assign(nk, 0.0);
  out.sigma.assign(nk, 0.0);
  out.b.assign(nk, 0.0);

  const auto orbit = trapezoid_periodic(8 * cutoff + 16, 0.0, T);
  for (std::size_t i = 0; i < orbit.nodes.size(); ++i) {
    const cplx v = a(orbit.nodes[i], 0.0) * orbit.weights[i] / T;
    for (int k = -cutoff; k <= cutoff; ++k)
      out.a[static_cast<std::size_t>(k + cutoff)] += v * std::polar(1.0, -kTwoPi * k * orbit.nodes[i] / T);
  }

  // Marginal of sigma along the orbit, then its Fourier coefficients.
  const auto rr = trapezoid_periodic(std::max(quad.r_nodes, 8 * cutoff + 16), 0.0, T);
  const auto yy = gauss_legendre(quad.y_nodes, sigma.y_lo, sigma.y_hi);
  for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
    cplx marginal{0.0};
    for (std::size_t j = 0; j < yy.nodes.size(); ++j) marginal += yy.weights[j] * sigma.value(rr.nodes[i], yy.nodes[j]);
    for (int k = -cutoff; k <= cutoff; ++k)
      out.sigma[static_cast<std::size_t>(k + cutoff)] +=
          rr.weights[i] * marginal * std::polar(1.0, kTwoPi * k * rr.nodes[i] / T);
  }
  for (std::size_t k = 0; k < nk; ++k) out.b[k] = out.a[k] * out.sigma[k];
  return out;
}

cplx stable_manifold_transport(const StableManifoldModel& model, const Field2& a, const ModelDensity& sigma, double t,
                               const QuadGrid2& quad) {
  check_model(model);
  const auto rr = trapezoid_periodic(quad.r_nodes, 0.0, model.period);
  const auto yy = gauss_legendre(quad.y_nodes, sigma.y_lo, sigma.y_hi);
  const std::size_t nr = rr.nodes.size(), ny = yy.nodes.size();
  std::vector<double> w(nr * ny);
  std::vector<cplx> vals(nr * ny);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < ny; ++j) w[i * ny + j] = rr.weights[i] * yy.weights[j];
  kernels::omp::tabulate(nr * ny,
                         [&](std::size_t idx) {
                           const double r = rr.nodes[idx / ny], y = yy.nodes[idx % ny];
                           const PhasePoint z = model.evolve({r, y}, t);
                           return a(z.x, z.xi) * sigma.value(r, y);
                         },
                         vals);
  return kernels::omp::weighted_sum(w, vals);
}

}  // namespace laglab
