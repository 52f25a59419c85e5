#pragma once

// Proliferating shell: v'' + (2/r) v' = f(v) from r = rho with v(rho) = sigmaQ,
// v'(rho) = Phi(rho), shot until v = sigmaBar. Also the sub-critical profile
// W(r, R) and the stitched nutrient profile.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer {

enum class Regime { Trivial, QuiescentOnly, ProliferatingOnly, TwoLayer };

std::string_view regime_name(Regime r);

struct OuterSolution {
  double rho = 0.0;
  double R = 0.0;  // first radius where v = sigmaBar
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> slopes;
  double start_slope = 0.0;  // Phi(rho)
  double end_slope = 0.0;
};

struct NutrientProfile {
  double R = 0.0;
  std::optional<double> rho;
  std::vector<double> grid;  // [0, R]
  std::vector<double> values;
  std::vector<double> slopes;
  Regime regime = Regime::ProliferatingOnly;
  std::size_t interface_index = 0;  // grid index of rho (TwoLayer only)
};

/// Default integration cap rho + 20 (sigmaBar - sigmaQ) / f(sigmaQ) + 10
/// unless cfg.r_max is set.
double resolved_r_max(const ModelParams& params, double rho, const SolverConfig& cfg);

/// Throws EventNotReached if sigmaBar is not reached before r_max.
OuterSolution shoot_outer(const ModelParams& params, double rho, const SolverConfig& cfg = {});

/// R(rho) without building the profile.
double shot_radius(const ModelParams& params, double rho, const SolverConfig& cfg = {});

/// R_c = R(0); independent of h.
double critical_radius(const ModelParams& params, const SolverConfig& cfg = {});

/// Inverse of rho -> R(rho). Returns exactly 0 when |R - R_c| <= event_tol * max(1, R)
/// and throws OutOfRange below that.
double rho_of_R(const ModelParams& params, double R, const SolverConfig& cfg = {});
double rho_of_R(const ModelParams& params, double R, double R_c, const SolverConfig& cfg);

/// TwoLayer for R >= R_c, ProliferatingOnly for R < R_c, QuiescentOnly when
/// sigmaBar <= sigmaQ.
NutrientProfile full_profile(const ModelParams& params, double R, const SolverConfig& cfg = {});
NutrientProfile full_profile(const ModelParams& params, double R, double R_c, const SolverConfig& cfg);

/// W(r, R): sigma'' + (2/r) sigma' = f(sigma), sigma(R) = sigmaBar, sigma(0) in [sigmaQ, sigmaBar].
NutrientProfile proliferating_only_profile(const ModelParams& params, double R,
                                           const SolverConfig& cfg = {});

/// Sigma(r, rho, R(rho)) stitched at r = rho.
NutrientProfile two_layer_profile(const ModelParams& params, double rho, const SolverConfig& cfg = {});

}  // namespace twolayer
