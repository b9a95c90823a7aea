#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "laglab/decay_fit.hpp"
#include "laglab/error.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/random.hpp"

using namespace laglab;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2n-1") {
  const auto q = gauss_legendre(6, -1.0, 3.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], 11);
  // \int_{-1}^{3} x^11 dx = (3^12 - 1) / 12
  CHECK(std::abs(s - (std::pow(3.0, 12) - 1.0) / 12.0) < 1e-7 * std::pow(3.0, 12));
  double w = 0.0;
  for (double v : q.weights) w += v;
  CHECK(std::abs(w - 4.0) < 1e-14);
}

TEST_CASE("periodic trapezoid is exact for low trigonometric modes") {
  const auto q = trapezoid_periodic(16, 0.0, 2 * pi);
  for (int m = 0; m < 16; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::cos(m * q.nodes[i]);
    CHECK(std::abs(s - (m == 0 ? 2 * pi : 0.0)) < 1e-13);
  }
}

TEST_CASE("nyquist node rule grows linearly in t") {
  const int n0 = nyquist_nodes(1, 0.0, 1.0, 2 * pi, 16);
  const int n1 = nyquist_nodes(1, 100.0, 1.0, 2 * pi, 16);
  const int n2 = nyquist_nodes(1, 200.0, 1.0, 2 * pi, 16);
  CHECK(n0 >= 16);
  CHECK(n1 > n0);
  CHECK(std::abs(double(n2) / double(n1) - 2.0) < 0.05);
}

TEST_CASE("decay_fit recovers exact models") {
  std::vector<double> t, v;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i);
    v.push_back(3.0 * std::exp(-0.7 * i));
  }
  const auto e = decay_fit(t, v, DecayModel::Exponential);
  CHECK(std::abs(e.rate - 0.7) < 1e-9);
  CHECK(std::abs(e.amplitude - 3.0) < 1e-8);

  t.clear();
  v.clear();
  for (int i = 1; i <= 100; ++i) {
    t.push_back(i);
    v.push_back(5.0 / i);
  }
  const auto p = decay_fit(t, v, DecayModel::Power);
  CHECK(std::abs(p.rate - 1.0) < 1e-9);
  CHECK(std::abs(p.amplitude - 5.0) < 1e-8);
}

TEST_CASE("decay_fit on seeded noisy data") {
  const CounterRng rng(0);
  std::vector<double> t, v;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i);
    v.push_back(3.0 * std::exp(-0.7 * i) * (1.0 + rng.uniform(static_cast<std::uint64_t>(i), -0.05, 0.05)));
  }
  const auto e = decay_fit(t, v, DecayModel::Exponential);
  CHECK(e.rate >= 0.6);
  CHECK(e.rate <= 0.8);
}

TEST_CASE("decay_fit drops values below the floor and needs five points") {
  std::vector<double> t{1, 2, 3, 4, 5, 6}, v{1, 0.5, 0.25, 1e-20, 0.0625, 0.03125};
  const auto e = decay_fit(t, v, DecayModel::Exponential);
  CHECK(e.points_used == 5);
  CHECK(std::abs(e.rate - std::log(2.0)) < 1e-12);
  std::vector<double> t4{1, 2, 3, 4}, v4{1, 0.5, 0.25, 0.125};
  CHECK_THROWS_AS(decay_fit(t4, v4, DecayModel::Exponential), InsufficientDataError);
}

TEST_CASE("fit_line") {
  const auto f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(std::abs(f.slope - 2.0) < 1e-14);
  CHECK(std::abs(f.intercept - 1.0) < 1e-14);
  CHECK(f.max_residual < 1e-14);
}

TEST_CASE("counter generator is reproducible and counter indexed") {
  CounterRng a(42), b(42), c(43);
  std::vector<std::uint64_t> sa, sb;
  for (int i = 0; i < 10; ++i) {
    sa.push_back(a.next_bits());
    sb.push_back(b.next_bits());
  }
  CHECK(sa == sb);
  CHECK(a.bits(3) == sa[3]);
  CHECK(c.bits(3) != sa[3]);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
