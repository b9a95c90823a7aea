#pragma once

#include <vector>

#include "laglab/grid.hpp"
#include "laglab/kernels.hpp"
#include "laglab/symbols.hpp"

namespace laglab {

/// Op[a] on a grid. Mode-sum form: sum_m e^{imx} g_m(xi + hbar m/2), applied in
/// momentum space with terms leaving the lattice dropped. Dense form: N x N
/// matrix in the centred momentum basis.
class WeylOperator {
 public:
  enum class Form { XDiagonal, XiDiagonal, ModeSum, Dense };

  static WeylOperator x_diagonal(const Grid& g, std::vector<cplx> values, bool hermitian);
  static WeylOperator xi_diagonal(const Grid& g, std::vector<cplx> values, bool hermitian);
  static WeylOperator mode_sum(const Grid& g, std::vector<kernels::ModeBlock> modes, bool hermitian);
  static WeylOperator dense(const Grid& g, std::vector<cplx> matrix, bool hermitian);

  Form form() const noexcept { return form_; }
  const Grid& grid() const noexcept { return grid_; }
  bool hermitian() const noexcept { return hermitian_; }
  const std::vector<kernels::ModeBlock>& modes() const noexcept { return modes_; }

  WaveFunction apply(const WaveFunction& psi) const;
  /// Matrix in the centred momentum basis, row-major (row = output slot).
  std::vector<cplx> momentum_matrix() const;

 private:
  WeylOperator(Form f, const Grid& g, bool h) : form_(f), grid_(g), hermitian_(h) {}

  Form form_;
  Grid grid_;
  bool hermitian_;
  std::vector<cplx> diag_;
  std::vector<kernels::ModeBlock> modes_;
  std::vector<cplx> dense_;
};

/// Structured quantization. Closed-form symbols fall back to the dense build
/// only when allow_dense is set and N <= 1024; otherwise CapabilityError.
WeylOperator weyl_quantize(const Symbol& a, const Grid& grid, bool allow_dense = false);

/// Dense Weyl kernel from pointwise symbol values:
/// M_{k'k} = a_hat_{k'-k}(hbar (k + k')/2), the x-transform taken on 2N nodes.
WeylOperator weyl_dense_oracle(const Symbol& a, const Grid& grid);

/// dx sum conj(psi_j) (A psi)_j.
cplx expectation(const WaveFunction& psi, const WeylOperator& op);

}  // namespace laglab
