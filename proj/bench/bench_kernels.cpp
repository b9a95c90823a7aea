// Serial vs OpenMP kernel timings. Each pair must agree bit for bit.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "laglab/kernels.hpp"
#include "laglab/random.hpp"

using laglab::cplx;
namespace k = laglab::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  laglab::CounterRng rng(seed);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {rng.uniform(2 * i, -1.0, 1.0), rng.uniform(2 * i + 1, -1.0, 1.0)};
  return v;
}

template <class F>
double time_ms(int reps, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool same(const std::vector<cplx>& a, const std::vector<cplx>& b) { return a == b; }

int failures = 0;

void row(const std::string& name, std::size_t n, double serial_ms, double omp_ms, bool identical) {
  if (!identical) ++failures;
  std::printf("%-16s %8zu %12.4f %12.4f %8.2fx %s\n", name.c_str(), n, serial_ms, omp_ms, serial_ms / omp_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8192;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 20;
  std::printf("threads %d, n %zu, reps %d\n", omp_get_max_threads(), n, reps);
  std::printf("%-16s %8s %12s %12s %9s %s\n", "kernel", "n", "serial_ms", "omp_ms", "speedup", "agreement");

  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / double(i + 1);

  {
    std::vector<cplx> s(n), o(n);
    auto f = [](std::size_t i) { return std::polar(1.0, 0.001 * double(i * i)); };
    const double ts = time_ms(reps, [&] { k::serial::tabulate(n, f, s); });
    const double to = time_ms(reps, [&] { k::omp::tabulate(n, f, o); });
    row("tabulate", n, ts, to, same(s, o));
  }
  {
    cplx s, o;
    const double ts = time_ms(reps, [&] { s = k::serial::inner(a, b); });
    const double to = time_ms(reps, [&] { o = k::omp::inner(a, b); });
    row("inner", n, ts, to, s == o);
  }
  {
    cplx s, o;
    const double ts = time_ms(reps, [&] { s = k::serial::weighted_sum(w, a); });
    const double to = time_ms(reps, [&] { o = k::omp::weighted_sum(w, a); });
    row("weighted_sum", n, ts, to, s == o);
  }
  {
    std::vector<k::ModeBlock> modes;
    for (int m = -4; m <= 4; ++m) modes.push_back({m, random_vector(n, 10 + static_cast<std::uint64_t>(m + 4))});
    std::vector<cplx> s(n), o(n);
    const double ts = time_ms(reps, [&] { k::serial::mode_sum_apply(modes, a, s); });
    const double to = time_ms(reps, [&] { k::omp::mode_sum_apply(modes, a, o); });
    row("mode_sum_apply", n, ts, to, same(s, o));
  }
  {
    const std::size_t d = 512;
    const auto mat = random_vector(d * d, 3);
    const std::vector<cplx> x(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(d, n)));
    std::vector<cplx> s(d), o(d);
    if (x.size() == d) {
      const double ts = time_ms(reps, [&] { k::serial::dense_matvec(mat, x, s); });
      const double to = time_ms(reps, [&] { k::omp::dense_matvec(mat, x, o); });
      row("dense_matvec", d, ts, to, same(s, o));
    }
  }
  {
    std::vector<laglab::PhasePoint> s(n), o(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = o[i] = {2.0 * M_PI * double(i) / double(n), 0.5};
    auto force = [](double x) { return std::sin(x); };
    const double ts = time_ms(1, [&] { k::serial::verlet_batch(s, force, 1e-3, 1000, 1e-3); });
    const double to = time_ms(1, [&] { k::omp::verlet_batch(o, force, 1e-3, 1000, 1e-3); });
    bool eq = true;
    for (std::size_t i = 0; i < n; ++i) eq = eq && s[i].x == o[i].x && s[i].xi == o[i].xi;
    row("verlet_batch", n, ts, to, eq);
  }
  {
    cplx s, o;
    const double ts = time_ms(reps, [&] { s = k::serial::shifted_overlap(a, 3, 5); });
    const double to = time_ms(reps, [&] { o = k::omp::shifted_overlap(a, 3, 5); });
    row("shifted_overlap", n, ts, to, s == o);
  }
  return failures == 0 ? 0 : 1;
}
