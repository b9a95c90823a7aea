#include "laglab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "laglab/error.hpp"
#include "laglab/fft.hpp"

namespace laglab {
namespace {

constexpr cplx I{0.0, 1.0};

// Fourier coefficients of f on the grid nodes, keyed by mode |m| < N/2.
std::map<int, cplx> grid_modes(const Grid& g, const std::function<cplx(double)>& f) {
  const int n = g.size();
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = f(g.x(j));
  fft::forward(v, v);
  double peak = 0.0;
  for (auto& c : v) {
    c /= double(n);
    peak = std::max(peak, std::abs(c));
  }
  std::map<int, cplx> out;
  for (int m = -n / 2 + 1; m < n / 2; ++m) {
    const cplx c = v[static_cast<std::size_t>((m + n) % n)];
    if (std::abs(c) > 1e-15 * peak) out[m] = c;
  }
  return out;
}

WeylOperator from_modes(const Grid& g, const std::map<int, std::function<cplx(double)>>& by_mode, bool hermitian) {
  std::vector<kernels::ModeBlock> blocks;
  const int n = g.size();
  for (const auto& [m, fn] : by_mode) {
    kernels::ModeBlock b;
    b.mode = m;
    b.multiplier.resize(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) b.multiplier[static_cast<std::size_t>(s)] = fn(g.hbar() * (g.k_of_slot(s) + 0.5 * m));
    blocks.push_back(std::move(b));
  }
  return WeylOperator::mode_sum(g, std::move(blocks), hermitian);
}

using Multiplier = std::function<cplx(double)>;

void accumulate(std::map<int, Multiplier>& by_mode, int m, Multiplier fn) {
  auto it = by_mode.find(m);
  if (it == by_mode.end()) {
    by_mode.emplace(m, std::move(fn));
  } else {
    it->second = [prev = it->second, fn = std::move(fn)](double xi) { return prev(xi) + fn(xi); };
  }
}

WeylOperator quantize_fourier(const Symbol& a, const std::vector<FourierTerm>& terms, const Grid& g) {
  const bool all_zero_mode = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.mode == 0; });
  const bool x_only = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.xi_independent; });
  const int n = g.size();
  if (all_zero_mode) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (const auto& t : terms) v[static_cast<std::size_t>(s)] += t.coeff(g.xi(s));
    return WeylOperator::xi_diagonal(g, std::move(v), a.is_real());
  }
  if (x_only) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double x = g.x(j);
      for (const auto& t : terms) v[static_cast<std::size_t>(j)] += t.coeff(0.0) * std::exp(I * (double(t.mode) * x));
    }
    return WeylOperator::x_diagonal(g, std::move(v), a.is_real());
  }
  std::map<int, Multiplier> by_mode;
  for (const auto& t : terms) accumulate(by_mode, t.mode, t.coeff);
  return from_modes(g, by_mode, a.is_real());
}

WeylOperator quantize_separable(const Symbol& a, const std::vector<SeparableTerm>& terms, const Grid& g) {
  const int n = g.size();
  const bool no_f = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return !t.f; });
  const bool no_g = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return !t.g; });
  if (no_f) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (const auto& t : terms) v[static_cast<std::size_t>(s)] += t.g ? t.g(g.xi(s)) : cplx{1.0};
    return WeylOperator::xi_diagonal(g, std::move(v), a.is_real());
  }
  if (no_g) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      for (const auto& t : terms) v[static_cast<std::size_t>(j)] += t.f(g.x(j));
    return WeylOperator::x_diagonal(g, std::move(v), a.is_real());
  }
  std::map<int, Multiplier> by_mode;
  for (const auto& t : terms) {
    const Multiplier gx = t.g ? t.g : Multiplier([](double) { return cplx{1.0}; });
    if (!t.f) {
      accumulate(by_mode, 0, gx);
      continue;
    }
    for (const auto& [m, c] : grid_modes(g, t.f)) accumulate(by_mode, m, [c = c, gx](double xi) { return c * gx(xi); });
  }
  return from_modes(g, by_mode, a.is_real());
}

}  // namespace

WeylOperator WeylOperator::x_diagonal(const Grid& g, std::vector<cplx> values, bool hermitian) {
  WeylOperator op(Form::XDiagonal, g, hermitian);
  op.diag_ = std::move(values);
  return op;
}

WeylOperator WeylOperator::xi_diagonal(const Grid& g, std::vector<cplx> values, bool hermitian) {
  WeylOperator op(Form::XiDiagonal, g, hermitian);
  op.diag_ = std::move(values);
  return op;
}

WeylOperator WeylOperator::mode_sum(const Grid& g, std::vector<kernels::ModeBlock> modes, bool hermitian) {
  for (const auto& b : modes)
    if (b.multiplier.size() != static_cast<std::size_t>(g.size()))
      throw ConfigError("mode-sum multiplier length does not match the grid");
  WeylOperator op(Form::ModeSum, g, hermitian);
  op.modes_ = std::move(modes);
  return op;
}

WeylOperator WeylOperator::dense(const Grid& g, std::vector<cplx> matrix, bool hermitian) {
  const auto n = static_cast<std::size_t>(g.size());
  if (matrix.size() != n * n) throw ConfigError("dense Weyl kernel has the wrong size");
  WeylOperator op(Form::Dense, g, hermitian);
  op.dense_ = std::move(matrix);
  return op;
}

WaveFunction WeylOperator::apply(const WaveFunction& psi) const {
  require_same_grid(grid_, psi.grid(), "WeylOperator::apply");
  const auto n = static_cast<std::size_t>(grid_.size());
  switch (form_) {
    case Form::XDiagonal: {
      WaveFunction out(grid_);
      for (std::size_t j = 0; j < n; ++j) out[j] = diag_[j] * psi[j];
      return out;
    }
    case Form::XiDiagonal: {
      auto c = psi.to_momentum();
      for (std::size_t s = 0; s < n; ++s) c[s] *= diag_[s];
      return WaveFunction::from_momentum(grid_, c);
    }
    case Form::ModeSum: {
      const auto c = psi.to_momentum();
      std::vector<cplx> out(n);
      kernels::omp::mode_sum_apply(modes_, c, out);
      return WaveFunction::from_momentum(grid_, out);
    }
    case Form::Dense: {
      const auto c = psi.to_momentum();
      std::vector<cplx> out(n);
      kernels::omp::dense_matvec(dense_, c, out);
      return WaveFunction::from_momentum(grid_, out);
    }
  }
  return psi;
}

std::vector<cplx> WeylOperator::momentum_matrix() const {
  const int n = grid_.size();
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> m(un * un);
  switch (form_) {
    case Form::XDiagonal: {
      std::vector<cplx> f = diag_;
      fft::forward(f, f);
      for (int o = 0; o < n; ++o)
        for (int i = 0; i < n; ++i) {
          const int d = ((grid_.k_of_slot(o) - grid_.k_of_slot(i)) % n + n) % n;
          m[static_cast<std::size_t>(o) * un + static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(d)] / double(n);
        }
      break;
    }
    case Form::XiDiagonal:
      for (std::size_t s = 0; s < un; ++s) m[s * un + s] = diag_[s];
      break;
    case Form::ModeSum:
      for (const auto& b : modes_)
        for (int i = 0; i < n; ++i) {
          const int o = i + b.mode;
          if (o >= 0 && o < n) m[static_cast<std::size_t>(o) * un + static_cast<std::size_t>(i)] += b.multiplier[static_cast<std::size_t>(i)];
        }
      break;
    case Form::Dense:
      m = dense_;
      break;
  }
  return m;
}

WeylOperator weyl_quantize(const Symbol& a, const Grid& grid, bool allow_dense) {
  const auto& rep = a.representation();
  if (const auto* f = std::get_if<std::vector<FourierTerm>>(&rep)) return quantize_fourier(a, *f, grid);
  if (const auto* s = std::get_if<std::vector<SeparableTerm>>(&rep)) return quantize_separable(a, *s, grid);
  if (allow_dense && grid.size() <= 1024) return weyl_dense_oracle(a, grid);
  throw CapabilityError("symbol '" + a.name() + "' is closed-form; quantizing it needs the dense build (N <= 1024)");
}

WeylOperator weyl_dense_oracle(const Symbol& a, const Grid& grid) {
  if (!a.is_periodic()) throw CapabilityError("symbol '" + a.name() + "' is not 2 pi periodic in x");
  if (grid.size() > 1024) throw CapabilityError("dense Weyl kernel limited to N <= 1024");
  const int n = grid.size();
  const auto un = static_cast<std::size_t>(n);
  const int q = 2 * n;
  const double hbar = grid.hbar();
  std::vector<cplx> mat(un * un);
  // k + k' runs over -N .. N-2; one transform per midpoint momentum.
#pragma omp parallel for schedule(dynamic, 4)
  for (int sum = -n; sum <= n - 2; ++sum) {
    const double xi = 0.5 * hbar * sum;
    std::vector<cplx> v(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) v[static_cast<std::size_t>(j)] = a.eval({2.0 * std::numbers::pi * j / q, xi});
    fft::forward(v, v);
    for (int o = 0; o < n; ++o) {
      const int ko = grid.k_of_slot(o);
      const int ki = sum - ko;
      if (!grid.has_k(ki)) continue;
      const int d = ko - ki;
      mat[static_cast<std::size_t>(o) * un + static_cast<std::size_t>(grid.slot_of_k(ki))] =
          v[static_cast<std::size_t>((d + q) % q)] / double(q);
    }
  }
  return WeylOperator::dense(grid, std::move(mat), a.is_real());
}

cplx expectation(const WaveFunction& psi, const WeylOperator& op) {
  const auto out = op.apply(psi);
  return psi.grid().dx() * kernels::omp::inner(psi.values(), out.values());
}

}  // namespace laglab
