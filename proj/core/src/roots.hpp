#pragma once

// Bracketed scalar root finding (TOMS 748 from Boost.Math) plus helpers for
// growing a bracket geometrically.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "twolayer/errors.hpp"

namespace twolayer::detail {

struct Root {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Root of f in [lo, hi] given f(lo), f(hi) of opposite sign. Stops once
/// |f| <= f_tol or the bracket is narrower than x_rel_tol * max(|x|, x_abs_floor).
template <class F>
Root find_root(F&& f, double lo, double hi, double f_lo, double f_hi, double x_rel_tol,
               double f_tol, int max_iter, const char* what, double x_abs_floor = 0.0) {
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketFailure(std::string(what) + ": root is not bracketed");
  }
  if (std::abs(f_lo) <= f_tol) return {lo, f_lo, 0};
  if (std::abs(f_hi) <= f_tol) return {hi, f_hi, 0};

  double best_x = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double best_f = std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi;
  auto snapped = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteEvaluation(std::string(what) + ": non-finite residual");
    if (std::abs(v) < std::abs(best_f)) {
      best_f = v;
      best_x = x;
    }
    return std::abs(v) <= f_tol ? 0.0 : v;
  };
  auto tol = [&](double a, double b) {
    return std::abs(b - a) <= x_rel_tol * std::max({std::abs(a), std::abs(b), x_abs_floor});
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto bracket = boost::math::tools::toms748_solve(snapped, lo, hi, f_lo, f_hi, tol, iters);
  if (iters >= static_cast<std::uintmax_t>(max_iter) && !tol(bracket.first, bracket.second) &&
      std::abs(best_f) > f_tol) {
    throw NoConvergence(std::string(what) + ": root finder exceeded max_iter");
  }
  Root r;
  r.iterations = static_cast<int>(iters);
  if (std::abs(best_f) <= f_tol || bracket.first == bracket.second) {
    r.x = best_x;
    r.fx = best_f;
  } else {
    r.x = 0.5 * (bracket.first + bracket.second);
    r.fx = best_f;
  }
  return r;
}

}  // namespace twolayer::detail
