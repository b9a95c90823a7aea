#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// reference implementation, `omp` the OpenMP version. Reductions use a fixed
// blocking so both produce bit-identical results for any thread count.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "laglab/symbols.hpp"

namespace laglab::kernels {

inline constexpr std::size_t kBlock = 256;

/// One term of a mode-sum operator in momentum space: output index
/// o = i + mode receives multiplier[i] * input[i] when both are on the lattice.
struct ModeBlock {
  int mode = 0;
  std::vector<cplx> multiplier;
};

#define LAGLAB_KERNEL_DECLS                                                                           \
  void tabulate(std::size_t n, const std::function<cplx(std::size_t)>& f, std::span<cplx> out);       \
  cplx blocked_sum(std::span<const cplx> v);                                                          \
  cplx weighted_sum(std::span<const double> w, std::span<const cplx> v);                              \
  cplx inner(std::span<const cplx> a, std::span<const cplx> b);                                       \
  void dense_matvec(std::span<const cplx> mat, std::span<const cplx> in, std::span<cplx> out);        \
  void mode_sum_apply(std::span<const ModeBlock> modes, std::span<const cplx> in, std::span<cplx> out); \
  void verlet_batch(std::span<PhasePoint> pts, const std::function<double(double)>& force, double dt,  \
                    std::size_t steps, double last_dt);                                               \
  cplx shifted_overlap(std::span<const cplx> psi, long long m, long long n);

namespace serial {
LAGLAB_KERNEL_DECLS
}
namespace omp {
LAGLAB_KERNEL_DECLS
}

#undef LAGLAB_KERNEL_DECLS

}  // namespace laglab::kernels
