#pragma once

#include <string>

#include "laglab/catalog.hpp"
#include "laglab/grid.hpp"
#include "laglab/patch.hpp"

namespace laglab {

struct Propagation {
  WaveFunction psi;
  std::size_t steps = 0;
  double dt = 0.0;       // step actually used
  std::string warning;   // non-empty when the resolution rule is violated
};

/// Strang splitting e^{-iV dt/2h} e^{-i xi^2 dt/2h} e^{-iV dt/2h}, iterated.
/// dt is shrunk so that t is a whole number of steps.
Propagation split_step_propagate(const WaveFunction& psi, const SeparableHamiltonian& h, double t, double dt);

/// Exact free evolution: psi_hat_k -> e^{-i hbar k^2 t/2} psi_hat_k.
WaveFunction free_propagate(const WaveFunction& psi, double t);

/// Resolution rule for split-step: max|V| dt/hbar <= 0.5 and
/// max|xi|^2 dt/(2 hbar) <= pi/4. Returns an empty string when satisfied.
std::string split_step_warning(const Grid& g, const SeparableHamiltonian& h, double dt);

/// psi_j = rho_0(x_j) e^{i phi(x_j)/hbar}, summing periodic images of an
/// interval chart. Throws WindingError when e^{i phi/hbar} is not single-valued.
WaveFunction synthesize_state(const Grid& grid, const Symbol& phase, const Amplitude& amplitude);
WaveFunction synthesize_state(const Grid& grid, const LagrangianPatch& patch);

/// State over an action chart, built in momentum space:
/// c_k = sqrt(hbar/2pi) rho_0(hbar k) e^{-i phi(hbar k)/hbar}.
WaveFunction synthesize_action_state(const Grid& grid, const LagrangianPatch& patch);

/// Defect (phi(2pi) - phi(0)) measured from the nearest point of 2 pi hbar Z.
double winding_defect(const Symbol& phase, double hbar);

}  // namespace laglab
