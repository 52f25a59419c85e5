#pragma once

// Shell shot shared by the outer solver and the K-parameterised problem.

#include "radial.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer::detail {

struct ShellShot {
  double rho = 0.0;
  double slope = 0.0;  // v'(rho)
  double R = 0.0;
  double end_slope = 0.0;
  double series_end = 0.0;  // rho = 0 only: the centre series covers [0, series_end]
  RadialRun run;
};

/// v(rho) = sigmaQ, v'(rho) = slope, q = f, until v = sigmaBar. rho = 0 starts
/// from the centre series with v(0) = sigmaQ.
ShellShot shoot_shell(const ModelParams& p, double rho, double slope, const SolverConfig& cfg,
                      bool record);

/// Trace over [rho, R] (or [0, R] when rho = 0).
RadialTrace shell_trace(const ModelParams& p, const ShellShot& shot, std::size_t min_points);

/// int g(v) r^2 dr over the shot's trace.
double shell_moment(const ModelParams& p, const ShellShot& shot, const SolverConfig& cfg);

/// (1/R^3) [shell_moment - (nu/3) rho^3] with R the supplied radius.
double two_layer_F(const ModelParams& p, double R, const ShellShot& shot, const SolverConfig& cfg);

/// Inverts the increasing map rho -> R(rho) given by `shot_R` on [0, R).
template <class ShotR>
double invert_shot_radius(ShotR&& shot_R, double R, double R_c, const SolverConfig& cfg);

}  // namespace twolayer::detail

#include "shell_impl.hpp"
