#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "laglab/kernels.hpp"

namespace laglab::kernels::omp {
namespace {

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// Block partials are computed concurrently, then added in block order, which
// reproduces the serial summation exactly.
template <class BlockFn>
cplx reduce_blocks(std::size_t n, BlockFn block) {
  const auto nb = static_cast<long long>(block_count(n));
  std::vector<cplx> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    partial[static_cast<std::size_t>(b)] = block(lo, std::min(n, lo + kBlock));
  }
  cplx total{0.0};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

void tabulate(std::size_t n, const std::function<cplx(std::size_t)>& f, std::span<cplx> out) {
  const auto nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < nn; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}

cplx blocked_sum(std::span<const cplx> v) {
  return reduce_blocks(v.size(), [&](std::size_t lo, std::size_t hi) {
    cplx part{0.0};
    for (std::size_t i = lo; i < hi; ++i) part += v[i];
    return part;
  });
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> v) {
  return reduce_blocks(v.size(), [&](std::size_t lo, std::size_t hi) {
    cplx part{0.0};
    for (std::size_t i = lo; i < hi; ++i) part += w[i] * v[i];
    return part;
  });
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  return reduce_blocks(a.size(), [&](std::size_t lo, std::size_t hi) {
    cplx part{0.0};
    for (std::size_t i = lo; i < hi; ++i) part += std::conj(a[i]) * b[i];
    return part;
  });
}

void dense_matvec(std::span<const cplx> mat, std::span<const cplx> in, std::span<cplx> out) {
  const auto n = static_cast<long long>(in.size());
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < n; ++r) {
    cplx acc{0.0};
    const cplx* row = mat.data() + r * n;
    for (long long c = 0; c < n; ++c) acc += row[c] * in[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = acc;
  }
}

void mode_sum_apply(std::span<const ModeBlock> modes, std::span<const cplx> in, std::span<cplx> out) {
  const long long n = static_cast<long long>(in.size());
#pragma omp parallel for schedule(static)
  for (long long o = 0; o < n; ++o) {
    cplx acc{0.0};
    for (const auto& blk : modes) {
      const long long i = o - blk.mode;
      if (i >= 0 && i < n) acc += blk.multiplier[static_cast<std::size_t>(i)] * in[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(o)] = acc;
  }
}

void verlet_batch(std::span<PhasePoint> pts, const std::function<double(double)>& force, double dt,
                  std::size_t steps, double last_dt) {
  const auto n = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < n; ++k) {
    auto& p = pts[static_cast<std::size_t>(k)];
    double x = p.x, xi = p.xi;
    for (std::size_t s = 0; s < steps; ++s) {
      xi += 0.5 * dt * force(x);
      x += dt * xi;
      xi += 0.5 * dt * force(x);
    }
    if (last_dt != 0.0) {
      xi += 0.5 * last_dt * force(x);
      x += last_dt * xi;
      xi += 0.5 * last_dt * force(x);
    }
    p = {x, xi};
  }
}

cplx shifted_overlap(std::span<const cplx> psi, long long m, long long n) {
  const long long N = static_cast<long long>(psi.size());
  const long long mr = ((m % N) + N) % N;
  const long long nr = ((n % N) + N) % N;
  return reduce_blocks(psi.size(), [&](std::size_t lo, std::size_t hi) {
    cplx part{0.0};
    for (auto j = static_cast<long long>(lo); j < static_cast<long long>(hi); ++j) {
      const double ang = 2.0 * std::numbers::pi * double((mr * j) % N) / double(N);
      part += std::conj(psi[static_cast<std::size_t>(j)]) * std::polar(1.0, ang) *
              psi[static_cast<std::size_t>((j + nr) % N)];
    }
    return part;
  });
}

}  // namespace laglab::kernels::omp
