#pragma once

#include "laglab/config.hpp"
#include "laglab/report.hpp"

namespace laglab {

ExperimentReport run_stationary_phase(const ExperimentConfig& cfg);
ExperimentReport run_reduction_scan(const ExperimentConfig& cfg);
/// integrable-torus and integrable-transversal.
ExperimentReport run_integrable(const ExperimentConfig& cfg);
ExperimentReport run_catmap_mixing(const ExperimentConfig& cfg);
ExperimentReport run_stable_manifold(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind().
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace laglab
