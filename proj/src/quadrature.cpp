#include "laglab/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "laglab/error.hpp"

namespace laglab {
namespace {

struct Reference {
  std::vector<double> x, w;
};

// Newton iteration on the three-term recurrence, started from the
// Tricomi asymptotic guess. O(n^2), cached per n.
Reference legendre_reference(int n) {
  Reference r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[static_cast<std::size_t>(i)] = -z;
    r.x[static_cast<std::size_t>(n - 1 - i)] = z;
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

std::shared_ptr<const Reference> cached_reference(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Reference>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const Reference>(legendre_reference(n));
  return slot;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs at least one node");
  const auto ref = cached_reference(n);
  const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
  QuadratureRule q;
  q.nodes.resize(ref->x.size());
  q.weights.resize(ref->x.size());
  for (std::size_t i = 0; i < ref->x.size(); ++i) {
    q.nodes[i] = mid + half * ref->x[i];
    q.weights[i] = half * ref->w[i];
  }
  return q;
}

QuadratureRule trapezoid_periodic(int n, double lo, double hi) {
  if (n < 1) throw ConfigError("trapezoid rule needs at least one node");
  const double h = (hi - lo) / n;
  QuadratureRule q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.assign(static_cast<std::size_t>(n), h);
  for (int i = 0; i < n; ++i) q.nodes[static_cast<std::size_t>(i)] = lo + i * h;
  return q;
}

int nyquist_nodes(int max_mode, double t, double slope, double width, int floor) {
  const double oscillations = std::abs(max_mode) * (1.0 + std::abs(t) * std::abs(slope)) * std::abs(width) /
                              (2.0 * std::numbers::pi);
  const double n = std::ceil(4.0 * 2.0 * std::numbers::pi * oscillations);
  const int count = static_cast<int>(std::min(n, 4.0e6));
  return std::max(floor, count + (count % 2));
}

}  // namespace laglab
