#include "laglab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "laglab/error.hpp"

namespace laglab::fft {
namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Planning is not thread-safe in FFTW; execution of a finished plan is.
std::mutex plan_mutex;

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(plan_mutex);
  auto& p = cache[n];
  if (!p.fwd) {
    std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    auto* ia = reinterpret_cast<fftw_complex*>(a.data());
    auto* ib = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_1d(n, ia, ib, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(n, ia, ib, FFTW_BACKWARD, flags);
    if (!p.fwd || !p.bwd) throw Error("FFTW could not plan a transform of length " + std::to_string(n));
  }
  return p;
}

void run(std::span<const cplx> in, std::span<cplx> out, bool forward) {
  if (in.size() != out.size()) throw ConfigError("fft: input and output lengths differ");
  if (in.empty()) return;
  const auto& p = plans_for(static_cast<int>(in.size()));
  const fftw_plan plan = forward ? p.fwd : p.bwd;
  if (in.data() == out.data()) {
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  } else {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, true); }
void backward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, false); }

}  // namespace laglab::fft
