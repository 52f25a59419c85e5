#pragma once

#include <cstddef>

namespace twolayer {

/// Tolerances and caps shared by every solver. Zero for origin_cutoff or
/// r_max selects the automatic value.
struct SolverConfig {
  double ode_tol = 1e-10;    // relative tolerance of the embedded RK pair
  double bvp_tol = 1e-9;     // boundary residual of the core shooting
  double event_tol = 1e-10;  // crossing refinement / radius inversion
  double root_tol = 1e-9;    // |F| accepted at a stationary radius
  double conv_tol = 1e-6;    // trajectory convergence to R_s
  double origin_cutoff = 0.0;
  double r_max = 0.0;
  double R_cap = 1e3;
  double sigma_cap = 1e6;
  int max_iter = 200;
  std::size_t min_grid_points = 256;
  double evolve_tol = 1e-8;  // relative tolerance of the dR/dt integration
  std::size_t max_steps = 2'000'000;

  /// Throws InvalidConfig unless every tolerance is positive and caps sane.
  void validate() const;

  /// max(1e-6, 1e-3 * rho) unless origin_cutoff overrides it.
  double cutoff_for(double rho) const;
};

}  // namespace twolayer
