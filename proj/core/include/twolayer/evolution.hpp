#pragma once

// Reduced dynamics dR/dt = R F(R) with regime labels and R_c crossings.

#include <optional>
#include <vector>

#include "twolayer/outer_solver.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer {

struct TrajectorySample {
  double t = 0.0;
  double R = 0.0;
  std::optional<double> rho;  // present exactly when R > R_c
  Regime regime = Regime::ProliferatingOnly;
};

struct Transition {
  double t = 0.0;
  Regime from = Regime::ProliferatingOnly;
  Regime to = Regime::TwoLayer;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<Transition> transition_times;
  std::optional<double> converged_to;
  double R_c = 0.0;
  std::optional<double> R_s;  // stationary radius the dynamics tends to (0 when trivial)
  double noise_floor = 0.0;   // estimated |dF| from grid perturbation
  double atol = 0.0;
};

struct EvolveOptions {
  bool record_rho = true;
  bool stop_at_first_transition = false;
  std::size_t analytic_samples = 201;  // quiescent-only branch
};

/// 30 / max(nu/3, |g(sigmaBar)|/3, tiny).
double default_t_end(const ModelParams& params);

/// t_end <= 0 selects default_t_end. Throws StepFailure when the integrator
/// cannot advance.
Trajectory evolve(const ModelParams& params, double R0, double t_end, const SolverConfig& cfg = {},
                  const EvolveOptions& opts = {});

/// Time of the single R_c crossing predicted for (params, R0), absent otherwise.
std::optional<double> transition_time(const ModelParams& params, double R0, const SolverConfig& cfg = {});

}  // namespace twolayer
