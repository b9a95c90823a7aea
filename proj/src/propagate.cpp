#include "laglab/propagate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "laglab/error.hpp"

namespace laglab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx I{0.0, 1.0};

}  // namespace

std::string split_step_warning(const Grid& g, const SeparableHamiltonian& h, double dt) {
  const double hbar = g.hbar();
  const double xi_max = hbar * g.size() / 2.0;
  std::ostringstream os;
  if (h.potential_bound * dt / hbar > 0.5)
    os << "max|V| dt/hbar = " << h.potential_bound * dt / hbar << " exceeds 0.5; ";
  if (xi_max * xi_max * dt / (2.0 * hbar) > 0.25 * std::numbers::pi)
    os << "max|xi|^2 dt/(2 hbar) = " << xi_max * xi_max * dt / (2.0 * hbar) << " exceeds pi/4; ";
  std::string s = os.str();
  if (!s.empty()) s.resize(s.size() - 2);
  return s;
}

Propagation split_step_propagate(const WaveFunction& psi, const SeparableHamiltonian& h, double t, double dt) {
  if (!(dt > 0.0)) throw ConfigError("split-step dt must be positive");
  const Grid& g = psi.grid();
  const auto n = static_cast<std::size_t>(g.size());
  const double hbar = g.hbar();
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(t) / dt - 1e-9));
  Propagation out{psi, steps, steps ? t / double(steps) : 0.0, {}};
  if (steps == 0) return out;
  const double h_dt = out.dt;
  out.warning = split_step_warning(g, h, std::abs(h_dt));

  std::vector<cplx> half(n), full(n), kin(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double v = h.potential(g.x(static_cast<int>(j)));
    half[j] = std::exp(-I * (0.5 * v * h_dt / hbar));
    full[j] = half[j] * half[j];
  }
  for (std::size_t s = 0; s < n; ++s) {
    const double xi = g.xi(static_cast<int>(s));
    kin[s] = std::exp(-I * (0.5 * xi * xi * h_dt / hbar));
  }
  auto& v = out.psi.values();
  for (std::size_t step = 0; step < steps; ++step) {
    const auto& pot = step == 0 ? half : full;
    for (std::size_t j = 0; j < n; ++j) v[j] *= pot[j];
    auto c = out.psi.to_momentum();
    for (std::size_t s = 0; s < n; ++s) c[s] *= kin[s];
    out.psi = WaveFunction::from_momentum(g, c);
  }
  for (std::size_t j = 0; j < n; ++j) out.psi.values()[j] *= half[j];
  return out;
}

WaveFunction free_propagate(const WaveFunction& psi, double t) {
  const Grid& g = psi.grid();
  auto c = psi.to_momentum();
  for (int s = 0; s < g.size(); ++s) {
    const double k = g.k_of_slot(s);
    // hbar k^2 t / 2 reduced before the exponential keeps large t accurate.
    const double phase = std::fmod(0.5 * g.hbar() * k * k * t, kTwoPi);
    c[static_cast<std::size_t>(s)] *= std::polar(1.0, -phase);
  }
  return WaveFunction::from_momentum(g, c);
}

double winding_defect(const Symbol& phase, double hbar) {
  const double jump = phase.eval({kTwoPi, 0.0}).real() - phase.eval({0.0, 0.0}).real();
  const double w = jump / (kTwoPi * hbar);
  return std::abs(w - std::round(w)) * kTwoPi * hbar;
}

WaveFunction synthesize_state(const Grid& grid, const Symbol& phase, const Amplitude& amplitude) {
  const double hbar = grid.hbar();
  const double defect = winding_defect(phase, hbar);
  if (defect > 1e-9) {
    const double jump = phase.eval({kTwoPi, 0.0}).real() - phase.eval({0.0, 0.0}).real();
    std::ostringstream os;
    os << "e^{i phi/hbar} is not single-valued: phi(2pi) - phi(0) = " << jump << " misses 2 pi hbar Z by "
       << defect << "; snap the plane momentum to a multiple of hbar = " << hbar << " (nearest "
       << std::round(jump / (kTwoPi * hbar)) * hbar << ")";
    throw WindingError(os.str(), defect);
  }
  WaveFunction psi(grid);
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    cplx acc{0.0};
    if (amplitude.periodic) {
      acc = amplitude.value(x) * std::exp(I * (phase.eval({x, 0.0}).real() / hbar));
    } else {
      const long lo = static_cast<long>(std::floor((amplitude.lo - x) / kTwoPi));
      const long hi = static_cast<long>(std::ceil((amplitude.hi - x) / kTwoPi));
      for (long img = lo; img <= hi; ++img) {
        const double u = x + kTwoPi * double(img);
        if (u < amplitude.lo || u > amplitude.hi) continue;
        acc += amplitude.value(u) * std::exp(I * (phase.eval({u, 0.0}).real() / hbar));
      }
    }
    psi[static_cast<std::size_t>(j)] = acc;
  }
  return psi;
}

WaveFunction synthesize_state(const Grid& grid, const LagrangianPatch& patch) {
  if (patch.chart() == ChartKind::Action) return synthesize_action_state(grid, patch);
  return synthesize_state(grid, patch.phase(), patch.amplitude());
}

WaveFunction synthesize_action_state(const Grid& grid, const LagrangianPatch& patch) {
  if (patch.chart() != ChartKind::Action) throw ConfigError("action-state synthesis needs an action chart");
  const double hbar = grid.hbar();
  const double scale = std::sqrt(hbar / kTwoPi);
  std::vector<cplx> c(static_cast<std::size_t>(grid.size()));
  for (int s = 0; s < grid.size(); ++s) {
    const double action = grid.xi(s);
    if (action < patch.lo() || action > patch.hi()) continue;
    c[static_cast<std::size_t>(s)] = scale * patch.rho(action) * std::exp(-I * (patch.phase_at(action) / hbar));
  }
  const double lattice_top = hbar * (grid.size() / 2 - 1), lattice_bottom = -hbar * grid.size() / 2;
  if (patch.lo() < lattice_bottom || patch.hi() > lattice_top)
    throw ConfigError("action chart exceeds the momentum lattice window; raise N or shrink the patch");
  return WaveFunction::from_momentum(grid, c);
}

}  // namespace laglab
