#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "laglab/catalog.hpp"
#include "laglab/error.hpp"
#include "laglab/flow.hpp"
#include "laglab/patch.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/transport.hpp"

using namespace laglab;
using std::numbers::pi;

namespace {

Amplitude sqrt_one_plus_cos() {
  return {"sqrt((1+cos x)/2pi)", [](double x) { return cplx{std::sqrt((1.0 + std::cos(x)) / (2 * pi))}; }, 0.0,
          2 * pi, true};
}

}  // namespace

TEST_CASE("rotor flow") {
  const auto flow = HamiltonianFlow::rotor();
  const auto z = flow.evolve({0.0, 1.0}, pi);
  CHECK(std::abs(z.x - pi) < 1e-15);
  CHECK(z.xi == 1.0);
  const PhasePoint p{1.3, -0.7};
  const auto same = flow.evolve(p, 0.0);
  CHECK(same.x == p.x);
  CHECK(same.xi == p.xi);
  const auto a = flow.evolve(flow.evolve(p, 2.3), 4.1), b = flow.evolve(p, 6.4);
  CHECK(std::abs(std::remainder(a.x - b.x, 2 * pi)) < 1e-12);
}

TEST_CASE("Verlet flow property with aligned steps is exact") {
  const auto flow = HamiltonianFlow::verlet(parse_hamiltonian("pendulum-H(kappa=1)"), 0.125);
  const PhasePoint p{0.4, 0.9};
  const auto a = flow.evolve(flow.evolve(p, 0.5), 0.25), b = flow.evolve(p, 0.75);
  CHECK(a.x == b.x);
  CHECK(a.xi == b.xi);
}

TEST_CASE("Verlet energy conservation and second-order convergence") {
  const auto h = parse_hamiltonian("pendulum-H(kappa=1)");
  const PhasePoint p{pi / 2, 0.0};
  const auto flow = HamiltonianFlow::verlet(h, 1e-3);
  const auto out = flow.evolve(p, 10.0);
  CHECK(std::abs(flow.energy(out) - flow.energy(p)) <= 1e-4);

  const auto long_run = flow.evolve({0.3, 1.1}, 100.0);
  const double e0 = flow.energy({0.3, 1.1});
  CHECK(std::abs(flow.energy(long_run) - e0) / std::abs(e0) < 1e-4);

  // Richardson: halving dt divides the position error by about 4.
  const auto x1 = HamiltonianFlow::verlet(h, 2e-3).evolve(p, 10.0).x;
  const auto x2 = HamiltonianFlow::verlet(h, 1e-3).evolve(p, 10.0).x;
  const auto x3 = HamiltonianFlow::verlet(h, 5e-4).evolve(p, 10.0).x;
  const double ratio = std::abs(x1 - x2) / std::abs(x2 - x3);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("for_hamiltonian picks the exact rotor when V vanishes") {
  CHECK(HamiltonianFlow::for_hamiltonian(parse_hamiltonian("rotor-H()"), 1e-3).integrator() ==
        HamiltonianFlow::Integrator::ExactRotor);
  CHECK(HamiltonianFlow::for_hamiltonian(parse_hamiltonian("pendulum-H(kappa=1)"), 1e-3).integrator() ==
        HamiltonianFlow::Integrator::StormerVerlet);
}

TEST_CASE("Liouville averages") {
  const auto rotor = parse_hamiltonian("rotor-H()");
  CHECK(std::abs(liouville_average(rotor, 0.5, parse_symbol("constant(c=1)")) - 1.0) < 1e-14);
  CHECK(std::abs(liouville_average(rotor, 0.5, parse_symbol("cos(m=1)"))) < 1e-14);
  const auto pend = parse_hamiltonian("pendulum-H(kappa=1)");
  CHECK(std::abs(liouville_average(pend, -0.5, parse_symbol("constant(c=1)")) - 1.0) < 1e-14);
  CHECK_THROWS_AS(liouville_average(pend, 1.0, parse_symbol("cos(m=1)")), SingularShellError);
  CHECK_THROWS_AS(liouville_average(pend, -2.0, parse_symbol("cos(m=1)")), SingularShellError);
}

TEST_CASE("Liouville average against a Birkhoff time average") {
  const auto pend = parse_hamiltonian("pendulum-H(kappa=1)");
  const double energy = 2.0;
  const double shell = liouville_average(pend, energy, parse_symbol("cos(m=1)"));
  // One trajectory on the shell, T = 1e4, dt = 1e-3.
  double x = 0.0, xi = std::sqrt(2.0 * (energy - std::cos(0.0)));
  const double dt = 1e-3;
  const long steps = 10000000;
  double acc = 0.5 * std::cos(x);
  for (long s = 0; s < steps; ++s) {
    xi += 0.5 * dt * std::sin(x);
    x += dt * xi;
    xi += 0.5 * dt * std::sin(x);
    acc += (s + 1 == steps ? 0.5 : 1.0) * std::cos(x);
  }
  const double birkhoff = acc / double(steps);
  CHECK(std::abs(shell - birkhoff) <= 1e-3);

  // Librating shell: same comparison.
  const double low = -0.5;
  const double lib = liouville_average(pend, low, parse_symbol("cos(m=1)"));
  x = pi;
  xi = std::sqrt(2.0 * (low + 1.0));
  acc = 0.0;
  for (long s = 0; s < steps; ++s) {
    xi += 0.5 * dt * std::sin(x);
    x += dt * xi;
    xi += 0.5 * dt * std::sin(x);
    acc += std::cos(x);
  }
  CHECK(std::abs(lib - acc / double(steps)) <= 1e-3);
}

TEST_CASE("patch construction") {
  CHECK_THROWS_AS(LagrangianPatch(ChartKind::PositionInterval, parse_symbol("plane(p=0)"),
                                  parse_amplitude("gauss(center=3, width=0.5, cutoff=2)")),
                  ConfigError);
  const LagrangianPatch p(ChartKind::PositionInterval, parse_symbol("plane-sin(p=0.5, kappa=0.3)"),
                          parse_amplitude("bump(center=3, width=1)"));
  CHECK(std::abs(p.phase_slope(2.5) - (0.5 + 0.3 * std::cos(2.5))) < 1e-15);
  CHECK(std::abs(p.embed(2.5).xi - p.phase_slope(2.5)) < 1e-15);
}

TEST_CASE("mass density") {
  auto patch_with = [](const char* amp) {
    return LagrangianPatch(ChartKind::PositionInterval, parse_symbol("plane(p=0)"), parse_amplitude(amp));
  };
  CHECK(mass_density(patch_with("bump(center=3, width=1, height=0)")).mass == 0.0);
  // Closed form: \int e^{-(x-c)^2/w^2} dx = w sqrt(pi).
  CHECK(std::abs(mass_density(patch_with("gauss(center=3, width=0.3)")).mass - 0.3 * std::sqrt(pi)) < 1e-10);
  // Bump against a fine trapezoid oracle.
  const auto bump = patch_with("bump(center=3, width=1.2, twist=2)");
  const auto q = trapezoid_periodic(200000, 1.8, 4.2);
  double oracle = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) oracle += q.weights[i] * std::norm(bump.rho(q.nodes[i]));
  const auto m = mass_density(bump);
  CHECK(std::abs(m.mass - oracle) < 1e-10);
  CHECK(std::abs(m.weight(3.1) - std::norm(bump.rho(3.1))) < 1e-15);
  const double doubled = mass_density(patch_with("bump(center=3, width=1.2, height=2, twist=2)")).mass;
  CHECK(std::abs(doubled - 4.0 * m.mass) < 1e-12);
}

TEST_CASE("transport integral examples") {
  const auto rotor = HamiltonianFlow::rotor();
  const LagrangianPatch patch(ChartKind::PositionInterval, parse_symbol("plane-sin(p=0.5, kappa=0.3)"),
                              parse_amplitude("bump(center=3, width=1.2, twist=1)"));
  const double mass = mass_density(patch).mass;
  for (double t : {0.0, 3.0, 40.0})
    CHECK(std::abs(transport_integral(patch, parse_symbol("constant(c=1)"), rotor, t, 512) - mass) < 1e-12);

  // t = 0 with a position observable against a direct quadrature at 10x nodes.
  const Symbol a = parse_symbol("cos(amp=1, m=2, phase=0.3)");
  const auto q = gauss_legendre(5120, patch.lo(), patch.hi());
  double direct = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    direct += q.weights[i] * std::cos(2 * q.nodes[i] + 0.3) * std::norm(patch.rho(q.nodes[i]));
  CHECK(std::abs(transport_integral(patch, a, rotor, 0.0, 512).real() - direct) < 1e-10);

  // Uniform density on an invariant circle: cos x averages out for all t.
  const LagrangianPatch circle(ChartKind::PositionPeriodic, parse_symbol("plane(p=2)"), parse_amplitude("uniform()"));
  for (double t : {0.0, 1.0, 17.5, 100.0})
    CHECK(std::abs(transport_integral(circle, parse_symbol("cos(m=1)"), rotor, t, 256)) < 1e-14);
}

TEST_CASE("transport integral converges once the node rule is met") {
  const auto rotor = HamiltonianFlow::rotor();
  const LagrangianPatch patch(ChartKind::PositionInterval, parse_symbol("plane-sin(p=0.5, kappa=0.3)"),
                              parse_amplitude("bump(center=3, width=1.2, twist=1)"));
  const Symbol a = parse_symbol("cos(m=1) + cos(amp=0.5, m=2, n=1)");
  for (double t : {1.0, 25.0, 100.0}) {
    CAPTURE(t);
    const int n = transport_nodes(patch, 3, t, 256);
    const cplx v1 = transport_integral(patch, a, rotor, t, n), v2 = transport_integral(patch, a, rotor, t, 2 * n);
    CHECK(std::abs(v1 - v2) < 1e-9);
  }
}

TEST_CASE("torus prediction") {
  const LagrangianPatch circle(ChartKind::PositionPeriodic, parse_symbol("plane(p=2)"), sqrt_one_plus_cos());
  const auto mass = mass_fourier(circle, 8);
  auto omega = [](double i) { return i; };
  // a = 1: only m = 0 survives.
  for (double t : {0.0, 2.0, 9.0})
    CHECK(std::abs(torus_prediction(2.0, parse_symbol("constant(c=1)"), mass, omega, t, 8) - mass[8]) < 1e-14);
  // Uniform density: cos x gives zero.
  const LagrangianPatch uniform(ChartKind::PositionPeriodic, parse_symbol("plane(p=2)"), parse_amplitude("uniform()"));
  const auto umass = mass_fourier(uniform, 8);
  CHECK(std::abs(torus_prediction(2.0, parse_symbol("cos(m=1)"), umass, omega, 1.3, 8)) < 1e-14);

  // 2048-node direct quadrature of \int cos(x + t I)(1 + cos x)/(2 pi) dx at t = pi.
  const double t = pi, action = 2.0;
  const auto q = trapezoid_periodic(2048, 0.0, 2 * pi);
  double direct = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    direct += q.weights[i] * std::cos(q.nodes[i] + t * action) * (1.0 + std::cos(q.nodes[i])) / (2 * pi);
  const cplx pred = torus_prediction(action, parse_symbol("cos(m=1)"), mass, omega, t, 8);
  CHECK(std::abs(pred.real() - direct) < 1e-10);
  CHECK(std::abs(pred.real() - 0.5) < 1e-10);

  // Transport on the invariant circle equals the series for t <= 100.
  const auto rotor = HamiltonianFlow::rotor();
  const Symbol a = parse_symbol("cos(m=1) + sin(amp=0.3, m=2)");
  const auto table = fourier_coefficients(a, 8, action);
  for (double s = 0.0; s <= 100.0; s += 12.5)
    CHECK(std::abs(transport_integral(circle, a, rotor, s, 512) - torus_prediction(table, mass, action, s)) < 1e-9);
}

TEST_CASE("transversal limit") {
  const LagrangianPatch patch(ChartKind::Action, parse_symbol("shear(x0=0)"),
                              parse_amplitude("gauss(center=0.5, width=0.1)"));
  const double mass = 0.1 * std::sqrt(pi);
  CHECK(std::abs(transversal_limit(patch, parse_symbol("cos(m=1)"))) < 1e-14);
  CHECK(std::abs(transversal_limit(patch, parse_symbol("constant(c=3)")) - 3.0 * mass) < 1e-10);
  CHECK(std::abs(transversal_limit(patch, parse_symbol("cos(m=1) + constant(c=2)")) - 2.0 * mass) < 1e-10);
}
