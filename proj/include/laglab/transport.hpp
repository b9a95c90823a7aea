#pragma once

#include <functional>
#include <vector>

#include "laglab/flow.hpp"
#include "laglab/patch.hpp"
#include "laglab/symbols.hpp"

namespace laglab {

/// \int a(Phi^t(embed(u))) |rho_0(u)|^2 du: trapezoid on the periodic chart,
/// Gauss-Legendre on interval charts.
cplx transport_integral(const LagrangianPatch& patch, const Symbol& a, const HamiltonianFlow& flow, double t,
                        int nodes);

/// Node count for transport at time t: Nyquist rule on the patch width with
/// phase slope 1 + |t| max|d xi/du| (position chart) or 1 + |t| (action chart).
int transport_nodes(const LagrangianPatch& patch, int max_mode, double t, int floor);

/// sum_{|m|<=M} a_m(I) mass_{-m} e^{i m omega(I) t}; mass indexed m + M.
cplx torus_prediction(double action, const Symbol& a, const std::vector<cplx>& mass_coeffs,
                      const std::function<double(double)>& omega, double t, int cutoff);
cplx torus_prediction(const FourierTable& a_coeffs, const std::vector<cplx>& mass_coeffs, double omega, double t);

/// \int a_0(I) |rho_0(I)|^2 dI over an action chart.
double transversal_limit(const LagrangianPatch& patch, const Symbol& a, int cutoff = 32, int nodes = 512);

}  // namespace laglab
