#include "twolayer/necrotic_limit.hpp"

#include <cmath>
#include <string>

#include "roots.hpp"
#include "shell.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/stationary.hpp"

namespace twolayer {

namespace {

void check_K(const ModelParams& p, double K) {
  const double lim = K_limit(p);
  if (!(K >= 0.0) || !(K < lim)) {
    throw InadmissibleK("K = " + std::to_string(K) + " outside [0, f(sigmaQ)/3 = " + std::to_string(lim) + ")");
  }
}

}  // namespace

double K_limit(const ModelParams& p) { return p.f(p.sigmaQ) / 3.0; }

AuxSolution shoot_aux(const ModelParams& p, double rho, double K, const SolverConfig& cfg) {
  check_K(p, K);
  const auto shot = detail::shoot_shell(p, rho, K * rho, cfg, true);
  auto t = detail::shell_trace(p, shot, cfg.min_grid_points);
  AuxSolution a;
  a.rho = rho;
  a.K = K;
  a.R = shot.R;
  a.end_slope = shot.end_slope;
  a.grid = std::move(t.r);
  a.values = std::move(t.v);
  a.slopes = std::move(t.dv);
  return a;
}

double aux_radius(const ModelParams& p, double rho, double K, const SolverConfig& cfg) {
  check_K(p, K);
  return detail::shoot_shell(p, rho, K * rho, cfg, false).R;
}

double rho_of_R_K(const ModelParams& p, double R, double K, const SolverConfig& cfg) {
  return rho_of_R_K(p, R, K, critical_radius(p, cfg), cfg);
}

double rho_of_R_K(const ModelParams& p, double R, double K, double R_c, const SolverConfig& cfg) {
  check_K(p, K);
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("rho_of_R_K needs R > 0");
  return detail::invert_shot_radius(
      [&](double rho) { return detail::shoot_shell(p, rho, K * rho, cfg, false).R; }, R, R_c, cfg);
}

double growth_functional_K(const ModelParams& p, double R, double K, const SolverConfig& cfg) {
  return growth_functional_K(p, R, K, critical_radius(p, cfg), cfg);
}

double growth_functional_K(const ModelParams& p, double R, double K, double R_c, const SolverConfig& cfg) {
  const double rho = rho_of_R_K(p, R, K, R_c, cfg);
  const auto shot = detail::shoot_shell(p, rho, K * rho, cfg, true);
  return detail::two_layer_F(p, R, shot, cfg);
}

double stationary_K(const ModelParams& p, double K, const SolverConfig& cfg) {
  check_K(p, K);
  const double R_c = critical_radius(p, cfg);
  auto F = [&](double R) { return growth_functional_K(p, R, K, R_c, cfg); };
  double lo = R_c, F_lo = F(R_c);
  if (!(F_lo > 0.0)) throw BracketFailure("stationary_K: F(R_c, K) <= 0, sigmaBar is not above sigma*");
  double hi = 2.0 * R_c, F_hi = F(hi);
  while (F_hi > 0.0) {
    lo = hi;
    F_lo = F_hi;
    hi *= 2.0;
    if (hi > cfg.R_cap) throw BracketFailure("stationary_K: F stays positive up to R_cap");
    F_hi = F(hi);
  }
  return detail::find_root(F, lo, hi, F_lo, F_hi, 1e-13, cfg.root_tol, cfg.max_iter, "stationary_K").x;
}

LimitSweep limit_sweep(const ModelParams& base, const std::vector<double>& lambdas, const SolverConfig& cfg) {
  if (lambdas.empty()) throw InvalidParams("limit_sweep needs at least one lambda");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || (i > 0 && !(lambdas[i] < lambdas[i - 1]))) {
      throw InvalidParams("limit_sweep lambdas must be positive and strictly decreasing");
    }
  }
  LimitSweep sw;
  sw.lambda_values = lambdas;
  const double R_c = critical_radius(base, cfg);
  sw.R_nec = stationary_K(base, 0.0, cfg);
  sw.rho_nec = rho_of_R_K(base, sw.R_nec, 0.0, R_c, cfg);

  for (double lam : lambdas) {
    const ModelParams p = base.with_h(base.h.scaled(lam));
    const StationaryResult st = find_stationary(p, cfg);
    if (st.regime != Regime::TwoLayer) {
      throw BracketFailure("limit_sweep: no two-layer stationary state at lambda = " + std::to_string(lam));
    }
    sw.R_s_values.push_back(st.R_s);
    sw.rho_s_values.push_back(st.rho_s.value_or(0.0));
    sw.gap_R.push_back(sw.R_nec - st.R_s);
    sw.gap_rho.push_back(std::abs(st.rho_s.value_or(0.0) - sw.rho_nec));
  }

  sw.R_increasing = true;
  sw.rho_approaching = true;
  sw.below_R_nec = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(sw.R_s_values[i] < sw.R_nec)) sw.below_R_nec = false;
    if (i == 0) continue;
    if (!(sw.R_s_values[i] > sw.R_s_values[i - 1])) sw.R_increasing = false;
    if (!(sw.gap_rho[i] < sw.gap_rho[i - 1])) sw.rho_approaching = false;
  }
  return sw;
}

}  // namespace twolayer
