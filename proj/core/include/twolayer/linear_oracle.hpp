#pragma once

// Closed forms for f = sigma, h = lambda sigma, g = mu (sigma - sigmaTilde),
// sigma0 = 0, with sigmaHat = sigmaQ.

#include "twolayer/rate_models.hpp"

namespace twolayer {

class LinearOracle {
 public:
  /// Throws PresetMismatch unless params have the linear form with 0 <= lambda <= 1.
  explicit LinearOracle(const ModelParams& params);

  double lambda() const { return lambda_; }

  /// x coth x at x = sqrt(lambda) rho; 1 at lambda = 0.
  double a(double rho) const;

  double inner(double r, double rho) const;        // V(r, rho)
  double inner_slope(double r, double rho) const;  // V_r(r, rho)
  double phi(double rho) const;
  double outer(double r, double rho) const;  // shell profile from rho
  double outer_slope(double r, double rho) const;
  double sub_critical(double r, double R) const;  // W(r, R)

  /// a sinh(R - rho) + rho cosh(R - rho) - (sigmaBar / sigmaHat) R
  double L(double rho, double R) const;
  /// lambda = 0 form: sinh(R - rho) + rho cosh(R - rho) - (sigmaBar / sigmaHat) R
  double L0(double rho, double R) const;

  double critical_radius() const;  // sinh R / R = sigmaBar / sigmaHat
  double shot_radius(double rho) const;
  double rho_of_R(double R) const;

  /// sigma(r, R, lambda) on [0, R]
  double profile(double r, double R) const;

  double F(double R) const;
  double threshold_functional() const;  // F at R_c
  double stationary_radius() const;
  double stationary_rho() const;

 private:
  double lambda_, mu_, sigma_tilde_, sigma_hat_, sigma_bar_, nu_;
  double R_f(double R, double rho) const;
};

}  // namespace twolayer
