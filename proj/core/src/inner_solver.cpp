#include "twolayer/inner_solver.hpp"

#include <cmath>
#include <string>

#include "radial.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/quadrature.hpp"

namespace twolayer {

namespace {

void check_inputs(const ModelParams& p, double rho) {
  if (!(p.sigmaQ > p.sigma0)) throw InvalidParams("inner problem needs sigmaQ > sigma0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidParams("inner problem needs rho >= 0");
}

}  // namespace

InnerSolution solve_inner(const ModelParams& p, double rho, const SolverConfig& cfg) {
  check_inputs(p, rho);
  InnerSolution sol;
  sol.rho = rho;
  sol.center_value = p.sigmaQ;

  if (rho == 0.0) {
    sol.grid = {0.0};
    sol.values = {p.sigmaQ};
    sol.slopes = {0.0};
    return sol;
  }
  if (p.h.is_identically_zero()) {
    const std::size_t n = cfg.min_grid_points + (cfg.min_grid_points % 2 == 0 ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      sol.grid.push_back(rho * static_cast<double>(i) / static_cast<double>(n - 1));
      sol.values.push_back(p.sigmaQ);
      sol.slopes.push_back(0.0);
    }
    return sol;
  }

  const double span = p.sigmaQ - p.sigma0;
  const auto shot = detail::solve_center_problem(p.h, p.sigma0, rho, p.sigmaQ, 1e-12 * span, span,
                                                 true, cfg, "inner shooting");
  auto trace = detail::center_trace(p.h, shot, cfg.min_grid_points);
  sol.center_value = p.sigma0 + shot.d_center;
  sol.end_slope = shot.dv_end;

  std::vector<double> integrand(trace.r.size());
  for (std::size_t i = 0; i < trace.r.size(); ++i) {
    integrand[i] = trace.r[i] * trace.r[i] * p.h(trace.v[i]);
  }
  sol.phi = simpson(trace.r, integrand) / (rho * rho);
  sol.grid = std::move(trace.r);
  sol.values = std::move(trace.v);
  sol.slopes = std::move(trace.dv);
  return sol;
}

double phi(const ModelParams& p, double rho, const SolverConfig& cfg) {
  check_inputs(p, rho);
  if (rho == 0.0 || p.h.is_identically_zero()) return 0.0;
  return solve_inner(p, rho, cfg).phi;
}

}  // namespace twolayer
