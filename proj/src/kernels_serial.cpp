#include <algorithm>
#include <cmath>
#include <numbers>

#include "laglab/kernels.hpp"

namespace laglab::kernels::serial {

void tabulate(std::size_t n, const std::function<cplx(std::size_t)>& f, std::span<cplx> out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

cplx blocked_sum(std::span<const cplx> v) {
  cplx total{0.0};
  for (std::size_t b = 0; b < v.size(); b += kBlock) {
    cplx part{0.0};
    const std::size_t end = std::min(v.size(), b + kBlock);
    for (std::size_t i = b; i < end; ++i) part += v[i];
    total += part;
  }
  return total;
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> v) {
  cplx total{0.0};
  for (std::size_t b = 0; b < v.size(); b += kBlock) {
    cplx part{0.0};
    const std::size_t end = std::min(v.size(), b + kBlock);
    for (std::size_t i = b; i < end; ++i) part += w[i] * v[i];
    total += part;
  }
  return total;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx total{0.0};
  for (std::size_t s = 0; s < a.size(); s += kBlock) {
    cplx part{0.0};
    const std::size_t end = std::min(a.size(), s + kBlock);
    for (std::size_t i = s; i < end; ++i) part += std::conj(a[i]) * b[i];
    total += part;
  }
  return total;
}

void dense_matvec(std::span<const cplx> mat, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = in.size();
  for (std::size_t r = 0; r < n; ++r) {
    cplx acc{0.0};
    const cplx* row = mat.data() + r * n;
    for (std::size_t c = 0; c < n; ++c) acc += row[c] * in[c];
    out[r] = acc;
  }
}

void mode_sum_apply(std::span<const ModeBlock> modes, std::span<const cplx> in, std::span<cplx> out) {
  const long long n = static_cast<long long>(in.size());
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
  for (auto& p : pts) {
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
  cplx total{0.0};
  for (long long s = 0; s < N; s += static_cast<long long>(kBlock)) {
    cplx part{0.0};
    const long long end = std::min(N, s + static_cast<long long>(kBlock));
    for (long long j = s; j < end; ++j) {
      const double ang = 2.0 * std::numbers::pi * double((mr * j) % N) / double(N);
      part += std::conj(psi[static_cast<std::size_t>(j)]) * std::polar(1.0, ang) *
              psi[static_cast<std::size_t>((j + nr) % N)];
    }
    total += part;
  }
  return total;
}

}  // namespace laglab::kernels::serial
