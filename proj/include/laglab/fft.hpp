#pragma once

#include <span>

#include "laglab/symbols.hpp"

namespace laglab::fft {

/// out_k = sum_j in_j e^{-2 pi i jk/n}, unnormalized. in and out may alias.
void forward(std::span<const cplx> in, std::span<cplx> out);
/// out_j = sum_k in_k e^{+2 pi i jk/n}, unnormalized. in and out may alias.
void backward(std::span<const cplx> in, std::span<cplx> out);

}  // namespace laglab::fft
