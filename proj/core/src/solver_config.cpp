#include "twolayer/solver_config.hpp"

#include <algorithm>
#include <cmath>

#include "twolayer/errors.hpp"

namespace twolayer {

void SolverConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(ode_tol) || !positive(bvp_tol) || !positive(event_tol) || !positive(root_tol) ||
      !positive(conv_tol) || !positive(evolve_tol)) {
    throw InvalidConfig("solver tolerances must be positive and finite");
  }
  if (origin_cutoff < 0.0 || r_max < 0.0) throw InvalidConfig("origin_cutoff and r_max must be >= 0");
  if (!positive(R_cap) || !positive(sigma_cap)) throw InvalidConfig("R_cap and sigma_cap must be positive");
  if (max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
  if (min_grid_points < 3) throw InvalidConfig("min_grid_points must be >= 3");
  if (max_steps < 10) throw InvalidConfig("max_steps must be >= 10");
}

double SolverConfig::cutoff_for(double rho) const {
  if (origin_cutoff > 0.0) return origin_cutoff;
  return std::max(1e-6, 1e-3 * rho);
}

}  // namespace twolayer
