#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "roots.hpp"
#include "twolayer/errors.hpp"

namespace twolayer::detail {

template <class ShotR>
double invert_shot_radius(ShotR&& shot_R, double R, double R_c, const SolverConfig& cfg) {
  const double tol = cfg.event_tol * std::max(1.0, R);
  if (R < R_c - tol) {
    throw OutOfRange("rho_of_R: R = " + std::to_string(R) + " is below R_c = " + std::to_string(R_c));
  }
  if (std::abs(R - R_c) <= tol) return 0.0;
  auto gap = [&](double rho) { return shot_R(rho) - R; };
  // R(rho) > rho, so rho = R always overshoots.
  double lo = 0.0, g_lo = R_c - R;
  double hi = R, g_hi = 0.0;
  const double guess = R - R_c;
  if (guess > 0.0 && guess < R) {
    const double g = gap(guess);
    if (g >= 0.0) {
      hi = guess;
      g_hi = g;
    } else {
      lo = guess;
      g_lo = g;
    }
  }
  if (hi == R) g_hi = gap(R);
  return find_root(gap, lo, hi, g_lo, g_hi, 1e-15, tol, cfg.max_iter, "rho_of_R", 1e-300).x;
}

}  // namespace twolayer::detail
