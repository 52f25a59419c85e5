#pragma once

// Quiescent core: v'' + (2/r) v' = h(v) on [0, rho], v'(0) = 0, v(rho) = sigmaQ.

#include <vector>

#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer {

struct InnerSolution {
  double rho = 0.0;
  std::vector<double> grid;    // increasing radii on [0, rho]
  std::vector<double> values;  // V(r, rho)
  std::vector<double> slopes;  // V_r(r, rho)
  double phi = 0.0;            // (1/rho^2) int_0^rho s^2 h(V) ds
  double center_value = 0.0;   // V(0, rho)
  double end_slope = 0.0;      // V_r(rho, rho) from the integrator
};

/// Shoots on v(0) in (sigma0, sigmaQ]. rho = 0 gives the single-point
/// solution; h identically zero gives V = sigmaQ.
InnerSolution solve_inner(const ModelParams& params, double rho, const SolverConfig& cfg = {});

/// Phi(rho) = V_r(rho, rho), Phi(0) = 0.
double phi(const ModelParams& params, double rho, const SolverConfig& cfg = {});

}  // namespace twolayer
