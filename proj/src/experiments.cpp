#include "laglab/experiments.hpp"

#include <algorithm>
#include <cstdlib>

#include "exp_common.hpp"
#include "laglab/error.hpp"

namespace laglab {

namespace detail {

int max_mode(const Symbol& a) {
  int m = 0;
  if (const auto& ch = a.characters()) {
    for (const auto& c : *ch) m = std::max(m, std::abs(c.m) + std::abs(c.n));
    return std::max(m, 1);
  }
  if (const auto* f = std::get_if<std::vector<FourierTerm>>(&a.representation())) {
    for (const auto& t : *f) m = std::max(m, std::abs(t.mode));
    return std::max(m, 1);
  }
  return 1;
}

}  // namespace detail

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto& k = cfg.kind();
  if (k == "stationary-phase") return run_stationary_phase(cfg);
  if (k == "reduction-scan") return run_reduction_scan(cfg);
  if (k == "integrable-torus" || k == "integrable-transversal") return run_integrable(cfg);
  if (k == "catmap-mixing") return run_catmap_mixing(cfg);
  if (k == "stable-manifold") return run_stable_manifold(cfg);
  throw ConfigError("unknown experiment kind '" + k + "'");
}

}  // namespace laglab
