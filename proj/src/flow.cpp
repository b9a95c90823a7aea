#include "laglab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "laglab/error.hpp"
#include "laglab/kernels.hpp"
#include "laglab/quadrature.hpp"

namespace laglab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

HamiltonianFlow HamiltonianFlow::rotor() {
  return HamiltonianFlow(Integrator::ExactRotor, make_hamiltonian(CallSpec{"rotor-H", {}}), 0.0);
}

HamiltonianFlow HamiltonianFlow::verlet(SeparableHamiltonian h, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("Verlet step dt must be positive");
  return HamiltonianFlow(Integrator::StormerVerlet, std::move(h), dt);
}

HamiltonianFlow HamiltonianFlow::for_hamiltonian(SeparableHamiltonian h, double dt) {
  if (h.free_motion) return HamiltonianFlow(Integrator::ExactRotor, std::move(h), 0.0);
  return verlet(std::move(h), dt);
}

void HamiltonianFlow::split(double t, double& step, std::size_t& steps, double& last) const {
  step = t < 0.0 ? -dt_ : dt_;
  const double ratio = std::abs(t) / dt_;
  steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  last = t - double(steps) * step;
  if (std::abs(last) <= 1e-9 * dt_) last = 0.0;
}

PhasePoint HamiltonianFlow::evolve(PhasePoint z, double t) const {
  PhasePoint p = z;
  evolve_batch({&p, 1}, t);
  return p;
}

void HamiltonianFlow::evolve_batch(std::span<PhasePoint> pts, double t) const {
  if (!std::isfinite(t)) throw DomainError("flow time must be finite");
  if (integrator_ == Integrator::ExactRotor) {
    for (auto& p : pts) p = {wrap_angle(p.x + t * p.xi), p.xi};
    return;
  }
  double step = 0.0, last = 0.0;
  std::size_t steps = 0;
  split(t, step, steps, last);
  kernels::omp::verlet_batch(pts, h_.force, step, steps, last);
}

double HamiltonianFlow::energy(PhasePoint z) const { return 0.5 * z.xi * z.xi + h_.potential(z.x); }

double liouville_average(const SeparableHamiltonian& h, double energy, const Symbol& a, int samples) {
  constexpr int kScan = 4096;
  std::vector<double> v(kScan);
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (int i = 0; i < kScan; ++i) {
    v[static_cast<std::size_t>(i)] = h.potential(kTwoPi * i / kScan);
    vmin = std::min(vmin, v[static_cast<std::size_t>(i)]);
    vmax = std::max(vmax, v[static_cast<std::size_t>(i)]);
  }
  if (energy <= vmin) throw SingularShellError("energy shell is empty or degenerate below min V");

  auto bisect = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      (h.potential(mid) < energy ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };

  // |grad H| on the shell: sqrt(V'^2 + xi^2) with xi^2 = 2(E - V).
  double min_grad = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double x = kTwoPi * i / kScan;
    const double vi = v[static_cast<std::size_t>(i)];
    if (vi > energy) continue;
    min_grad = std::min(min_grad, std::hypot(h.force(x), std::sqrt(2.0 * (energy - vi))));
  }

  double total_time = 0.0, total_integral = 0.0;
  auto add_branches = [&](const QuadratureRule& rule, auto&& point_and_dt) {
    for (double sign : {1.0, -1.0}) {
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const auto [x, dtdu] = point_and_dt(rule.nodes[i]);
        const double xi = sign * std::sqrt(std::max(0.0, 2.0 * (energy - h.potential(x))));
        const double w = rule.weights[i] * dtdu;
        total_time += w;
        total_integral += w * a.eval({x, xi}).real();
      }
    }
  };

  if (energy > vmax) {
    // Two rotating components, xi > 0 and xi < 0.
    const auto rule = trapezoid_periodic(std::max(samples, 64), 0.0, kTwoPi);
    add_branches(rule, [&](double x) {
      return std::pair{x, 1.0 / std::sqrt(2.0 * (energy - h.potential(x)))};
    });
  } else {
    // Librating components: arcs where V < E, each bounded by two turning points.
    int start = -1;
    for (int i = 0; i < kScan; ++i)
      if (v[static_cast<std::size_t>(i)] >= energy) {
        start = i;
        break;
      }
    for (int off = 0; off < kScan; ++off) {
      const int i = (start + off) % kScan;
      const int next = (i + 1) % kScan;
      if (!(v[static_cast<std::size_t>(i)] >= energy && v[static_cast<std::size_t>(next)] < energy)) continue;
      int j = next;
      int len = 0;
      while (v[static_cast<std::size_t>(j)] < energy && len < kScan) {
        j = (j + 1) % kScan;
        ++len;
      }
      const double xa = kTwoPi * i / kScan;
      const double xl = bisect(xa + kTwoPi / kScan, xa);
      const double xb = kTwoPi * (next + len) / kScan;
      const double xr = bisect(xb - kTwoPi / kScan, xb);
      min_grad = std::min({min_grad, std::abs(h.force(xl)), std::abs(h.force(xr))});
      const double mid = 0.5 * (xl + xr), half = 0.5 * (xr - xl);
      // x = mid + half sin(theta) removes the inverse square root at the turning points.
      const auto rule = gauss_legendre(std::max(samples, 64), -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
      add_branches(rule, [&](double th) {
        const double x = mid + half * std::sin(th);
        const double p = std::sqrt(std::max(2.0 * (energy - h.potential(x)), 1e-300));
        return std::pair{x, half * std::cos(th) / p};
      });
    }
  }
  if (min_grad < 1e-6) {
    std::ostringstream os;
    os << "energy " << energy << " is near-critical: min |grad H| on the shell = " << min_grad;
    throw SingularShellError(os.str());
  }
  if (!(total_time > 0.0)) throw SingularShellError("energy shell has zero measure");
  return total_integral / total_time;
}

}  // namespace laglab
