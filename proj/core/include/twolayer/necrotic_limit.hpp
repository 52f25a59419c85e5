#pragma once

// Shell problem with prescribed interface slope K rho, its growth functional
// F(R, K), and the h -> 0 limit towards the necrotic-core model (K = 0).

#include <vector>

#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer {

struct AuxSolution {
  double rho = 0.0;
  double K = 0.0;
  double R = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> slopes;
  double end_slope = 0.0;
};

/// f(sigmaQ) / 3; admissible K lie in [0, this).
double K_limit(const ModelParams& params);

/// Throws InadmissibleK outside [0, f(sigmaQ)/3).
AuxSolution shoot_aux(const ModelParams& params, double rho, double K, const SolverConfig& cfg = {});
double aux_radius(const ModelParams& params, double rho, double K, const SolverConfig& cfg = {});

/// rho(R, K); R_c is shared by every K.
double rho_of_R_K(const ModelParams& params, double R, double K, const SolverConfig& cfg = {});
double rho_of_R_K(const ModelParams& params, double R, double K, double R_c, const SolverConfig& cfg);

double growth_functional_K(const ModelParams& params, double R, double K, const SolverConfig& cfg = {});
double growth_functional_K(const ModelParams& params, double R, double K, double R_c,
                           const SolverConfig& cfg);

/// Root of F(., K) above R_c. Throws BracketFailure when F(R_c, K) <= 0.
double stationary_K(const ModelParams& params, double K, const SolverConfig& cfg = {});

struct LimitSweep {
  std::vector<double> lambda_values;
  std::vector<double> R_s_values;
  std::vector<double> rho_s_values;
  std::vector<double> gap_R;    // R_nec - R_s
  std::vector<double> gap_rho;  // |rho_s - rho_nec|
  double R_nec = 0.0;
  double rho_nec = 0.0;
  bool R_increasing = false;   // R_s strictly increasing as lambda decreases
  bool below_R_nec = false;
  bool rho_approaching = false;  // gap_rho strictly decreasing
};

/// h = lambda * params_base.h for each lambda (strictly decreasing, positive),
/// plus the K = 0 reference.
LimitSweep limit_sweep(const ModelParams& params_base, const std::vector<double>& lambdas,
                       const SolverConfig& cfg = {});

}  // namespace twolayer
