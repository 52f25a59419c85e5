#pragma once

// Growth functional F(R), stationary radii, the threshold sigma* and the
// a-priori estimates for the two-layer stationary state.

#include <optional>
#include <string>
#include <vector>

#include "twolayer/outer_solver.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer {

struct StationaryResult {
  Regime regime = Regime::Trivial;
  double R_s = 0.0;
  std::optional<double> rho_s;
  std::optional<double> eta_s;
  std::optional<NutrientProfile> profile;
  double F_residual = 0.0;
  double R_c = 0.0;  // 0 when sigmaBar <= sigmaQ
};

struct EstimateReport {
  std::string kind;  // "beta" or "delta"
  double parameter = 0.0;
  bool hypothesis_holds = false;  // beta: the zero-moment condition; delta: always true
  double hypothesis_integral = 0.0;
  double hypothesis_tolerance = 0.0;
  bool nu_condition_holds = false;
  double nu_threshold = 0.0;
  double eta_bound = 0.0;
  double R_lower = 0.0;
  double R_upper = 0.0;
  double R_s = 0.0;
  double eta_s = 0.0;
  bool eta_ok = false;
  bool lower_ok = false;
  bool upper_ok = false;
  bool satisfied = false;
  std::vector<std::string> notes;
};

/// Two-layer branch for R >= R_c, proliferating-only branch below.
double growth_functional(const ModelParams& params, double R, const SolverConfig& cfg = {});
double growth_functional(const ModelParams& params, double R, double R_c, const SolverConfig& cfg);

/// (1/R^3) int_0^R g(W(r, R)) r^2 dr, the branch used below R_c; defined for any R > 0.
double sub_critical_functional(const ModelParams& params, double R, const SolverConfig& cfg = {});

/// F evaluated on the two-layer formula for a given interface radius rho,
/// with R = R(rho).
double growth_functional_at_rho(const ModelParams& params, double rho, const SolverConfig& cfg = {});

StationaryResult find_stationary(const ModelParams& params, const SolverConfig& cfg = {});

/// F(R_c(sigmaBar)) at the sigmaBar stored in params.
double threshold_functional(const ModelParams& params, const SolverConfig& cfg = {});

/// Root of threshold_functional in sigmaBar.
double sigma_star(const ModelParams& params, const SolverConfig& cfg = {});

/// Root of G(s) = int_{sigmaQ}^{s} g(t) (t - sigmaQ)^2 dt.
double sigma_bar_g(const ModelParams& params, const SolverConfig& cfg = {});

EstimateReport estimate_beta(const ModelParams& params, double beta, const SolverConfig& cfg = {});
EstimateReport estimate_delta(const ModelParams& params, double delta, const SolverConfig& cfg = {});

/// Same checks against an already computed stationary state.
EstimateReport estimate_beta(const ModelParams& params, double beta, const StationaryResult& st);
EstimateReport estimate_delta(const ModelParams& params, double delta, const StationaryResult& st);

}  // namespace twolayer
