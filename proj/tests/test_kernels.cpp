#include <omp.h>

#include <cmath>
#include <vector>

#include "doctest.h"
#include "laglab/kernels.hpp"
#include "laglab/random.hpp"

using namespace laglab;
namespace k = laglab::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {rng.uniform(2 * i, -1, 1), rng.uniform(2 * i + 1, -1, 1)};
  return v;
}

struct ThreadCount {
  int saved = omp_get_max_threads();
  explicit ThreadCount(int n) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("omp kernels are bit-identical to the serial reference") {
  for (int threads : {1, 2, 3, 4}) {
    ThreadCount guard(threads);
    for (std::size_t n : {1u, 255u, 256u, 257u, 1000u, 4096u}) {
      CAPTURE(threads);
      CAPTURE(n);
      const auto a = random_vector(n, 1), b = random_vector(n, 2);
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = std::sqrt(double(i) + 0.5);

      CHECK(k::serial::blocked_sum(a) == k::omp::blocked_sum(a));
      CHECK(k::serial::inner(a, b) == k::omp::inner(a, b));
      CHECK(k::serial::weighted_sum(w, a) == k::omp::weighted_sum(w, a));
      CHECK(k::serial::shifted_overlap(a, 2, 3) == k::omp::shifted_overlap(a, 2, 3));

      std::vector<cplx> s(n), o(n);
      auto f = [](std::size_t i) { return std::polar(1.0, 0.01 * double(i)); };
      k::serial::tabulate(n, f, s);
      k::omp::tabulate(n, f, o);
      CHECK(s == o);

      std::vector<k::ModeBlock> modes;
      for (int m = -3; m <= 3; ++m) modes.push_back({m, random_vector(n, 20 + static_cast<std::uint64_t>(m + 3))});
      k::serial::mode_sum_apply(modes, a, s);
      k::omp::mode_sum_apply(modes, a, o);
      CHECK(s == o);

      std::vector<PhasePoint> ps(n), po(n);
      for (std::size_t i = 0; i < n; ++i) ps[i] = po[i] = {0.01 * double(i), 0.3};
      auto force = [](double x) { return std::sin(x); };
      k::serial::verlet_batch(ps, force, 1e-2, 50, 5e-3);
      k::omp::verlet_batch(po, force, 1e-2, 50, 5e-3);
      bool same = true;
      for (std::size_t i = 0; i < n; ++i) same = same && ps[i].x == po[i].x && ps[i].xi == po[i].xi;
      CHECK(same);
    }
    const std::size_t d = 300;
    const auto mat = random_vector(d * d, 5), x = random_vector(d, 6);
    std::vector<cplx> s(d), o(d);
    k::serial::dense_matvec(mat, x, s);
    k::omp::dense_matvec(mat, x, o);
    CHECK(s == o);
  }
}

TEST_CASE("serial kernels against direct loops") {
  const auto a = random_vector(777, 3), b = random_vector(777, 4);
  cplx direct{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) direct += std::conj(a[i]) * b[i];
  CHECK(std::abs(k::serial::inner(a, b) - direct) < 1e-12);

  // Mode m shifts index i to i + m and drops what leaves the range.
  std::vector<k::ModeBlock> modes{{2, std::vector<cplx>(8, 1.0)}};
  std::vector<cplx> in(8), out(8);
  for (int i = 0; i < 8; ++i) in[static_cast<std::size_t>(i)] = double(i + 1);
  k::serial::mode_sum_apply(modes, in, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 1.0);
  CHECK(out[7] == 6.0);
}
