#pragma once

#include <span>

#include "laglab/catalog.hpp"
#include "laglab/symbols.hpp"

namespace laglab {

/// Phi^t for H = xi^2/2 + V(x): exact for the free rotor, Stormer-Verlet otherwise.
class HamiltonianFlow {
 public:
  enum class Integrator { ExactRotor, StormerVerlet };

  static HamiltonianFlow rotor();
  static HamiltonianFlow verlet(SeparableHamiltonian h, double dt);
  /// Exact rotor when V vanishes, Verlet with step dt otherwise.
  static HamiltonianFlow for_hamiltonian(SeparableHamiltonian h, double dt);

  Integrator integrator() const noexcept { return integrator_; }
  double dt() const noexcept { return dt_; }
  const SeparableHamiltonian& hamiltonian() const noexcept { return h_; }

  /// Exact rotor reduces x mod 2 pi; Verlet leaves x unwrapped. A t that is
  /// not a multiple of dt ends with one shortened step.
  PhasePoint evolve(PhasePoint z, double t) const;
  void evolve_batch(std::span<PhasePoint> pts, double t) const;
  double energy(PhasePoint z) const;

 private:
  HamiltonianFlow(Integrator i, SeparableHamiltonian h, double dt) : integrator_(i), h_(std::move(h)), dt_(dt) {}
  void split(double t, double& step, std::size_t& steps, double& last) const;

  Integrator integrator_;
  SeparableHamiltonian h_;
  double dt_;
};

/// Normalized Liouville average of a over {H = E} for d = 1. Each connected
/// component is parametrized by time and weighted by its period.
double liouville_average(const SeparableHamiltonian& h, double energy, const Symbol& a, int samples = 256);

}  // namespace laglab
