#include "twolayer/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roots.hpp"
#include "shell.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/quadrature.hpp"

namespace twolayer {

namespace {

constexpr std::size_t kMomentPanels = 2048;

double sub_critical_F_impl(const ModelParams& p, double R, const SolverConfig& cfg) {
  const NutrientProfile w = proliferating_only_profile(p, R, cfg);
  std::vector<double> y(w.grid.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = p.g(w.values[i]) * w.grid[i] * w.grid[i];
  return simpson(w.grid, y) / (R * R * R);
}

double two_layer_F_rho(const ModelParams& p, double R, double rho, const SolverConfig& cfg) {
  const auto shot = detail::shoot_shell(p, rho, phi(p, rho, cfg), cfg, true);
  return detail::two_layer_F(p, R, shot, cfg);
}

}  // namespace

double growth_functional(const ModelParams& p, double R, const SolverConfig& cfg) {
  return growth_functional(p, R, critical_radius(p, cfg), cfg);
}

double growth_functional(const ModelParams& p, double R, double R_c, const SolverConfig& cfg) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("growth functional needs R > 0");
  if (R < R_c) return sub_critical_F_impl(p, R, cfg);
  return two_layer_F_rho(p, R, rho_of_R(p, R, R_c, cfg), cfg);
}

double sub_critical_functional(const ModelParams& p, double R, const SolverConfig& cfg) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("growth functional needs R > 0");
  return sub_critical_F_impl(p, R, cfg);
}

double growth_functional_at_rho(const ModelParams& p, double rho, const SolverConfig& cfg) {
  const auto shot = detail::shoot_shell(p, rho, phi(p, rho, cfg), cfg, true);
  return detail::two_layer_F(p, shot.R, shot, cfg);
}

StationaryResult find_stationary(const ModelParams& p, const SolverConfig& cfg) {
  cfg.validate();
  StationaryResult res;
  if (p.sigmaBar > p.sigmaQ) res.R_c = critical_radius(p, cfg);
  if (!(p.sigmaBar > p.sigmaTilde)) {
    res.regime = Regime::Trivial;
    return res;
  }
  const double R_c = res.R_c;
  auto F = [&](double R) { return growth_functional(p, R, R_c, cfg); };

  const double F_c = F(R_c);
  double R_s = R_c;
  double F_s = F_c;
  if (std::abs(F_c) > cfg.root_tol) {
    double lo, hi, F_lo, F_hi;
    if (F_c > 0.0) {
      lo = R_c;
      F_lo = F_c;
      hi = 2.0 * R_c;
      F_hi = F(hi);
      while (F_hi > 0.0) {
        lo = hi;
        F_lo = F_hi;
        hi *= 2.0;
        if (hi > cfg.R_cap) throw BracketFailure("find_stationary: F stays positive up to R_cap");
        F_hi = F(hi);
      }
    } else {
      hi = R_c;
      F_hi = F_c;
      lo = 0.5 * R_c;
      F_lo = F(lo);
      while (F_lo < 0.0) {
        hi = lo;
        F_hi = F_lo;
        lo *= 0.5;
        if (lo < 1e-12 * R_c) throw BracketFailure("find_stationary: F stays negative near R = 0");
        F_lo = F(lo);
      }
    }
    const auto root = detail::find_root(F, lo, hi, F_lo, F_hi, 1e-13, cfg.root_tol, cfg.max_iter,
                                        "find_stationary");
    R_s = root.x;
    F_s = root.fx;
  }

  res.R_s = R_s;
  res.F_residual = F_s;
  if (R_s > R_c) {
    res.regime = Regime::TwoLayer;
    res.profile = full_profile(p, R_s, R_c, cfg);
    res.rho_s = res.profile->rho.value_or(0.0);
    res.eta_s = *res.rho_s / R_s;
  } else {
    res.regime = Regime::ProliferatingOnly;
    res.profile = proliferating_only_profile(p, R_s, cfg);
  }
  return res;
}

double threshold_functional(const ModelParams& p, const SolverConfig& cfg) {
  const auto shot = detail::shoot_shell(p, 0.0, 0.0, cfg, true);
  return detail::two_layer_F(p, shot.R, shot, cfg);
}

double sigma_star(const ModelParams& p, const SolverConfig& cfg) {
  cfg.validate();
  auto calF = [&](double s) { return threshold_functional(p.with_sigma_bar(s), cfg); };
  double lo = p.sigmaTilde;
  double F_lo = calF(lo);
  if (!(F_lo < 0.0)) throw BracketFailure("sigma_star: threshold functional is not negative at sigmaTilde");
  double hi = 2.0 * p.sigmaTilde;
  double F_hi = calF(hi);
  while (F_hi < 0.0) {
    lo = hi;
    F_lo = F_hi;
    hi *= 2.0;
    if (hi > cfg.sigma_cap) throw BracketFailure("sigma_star: threshold functional stays negative up to sigma_cap");
    F_hi = calF(hi);
  }
  return detail::find_root(calF, lo, hi, F_lo, F_hi, 1e-14, 0.01 * cfg.root_tol, cfg.max_iter,
                           "sigma_star")
      .x;
}

double sigma_bar_g(const ModelParams& p, const SolverConfig& cfg) {
  const double q = p.sigmaQ;
  auto G = [&](double s) {
    return simpson_uniform([&](double t) { return p.g(t) * (t - q) * (t - q); }, q, s, kMomentPanels);
  };
  double lo = p.sigmaTilde;
  double G_lo = G(lo);
  double step = p.sigmaTilde - q;
  double hi = lo + step;
  double G_hi = G(hi);
  while (G_hi < 0.0) {
    lo = hi;
    G_lo = G_hi;
    step *= 2.0;
    hi = p.sigmaTilde + step;
    if (hi > cfg.sigma_cap) throw BracketFailure("sigma_bar_g: G stays negative up to sigma_cap");
    G_hi = G(hi);
  }
  return detail::find_root(G, lo, hi, G_lo, G_hi, 1e-15, 0.0, cfg.max_iter, "sigma_bar_g").x;
}

namespace {

void check_level(const ModelParams& p, double x, const char* name) {
  if (!(x > p.sigma0 && x < p.sigmaQ)) {
    throw InvalidParams(std::string(name) + " must lie in (sigma0, sigmaQ)");
  }
}

void fill_bounds(const ModelParams& p, const StationaryResult& st, EstimateReport& rep,
                 double upper_sq) {
  rep.R_lower = std::sqrt(6.0 * (p.sigmaBar - p.sigmaQ) / p.f(p.sigmaBar));
  rep.R_upper = std::sqrt(upper_sq);
  if (st.regime != Regime::TwoLayer) {
    rep.notes.push_back("stationary state is not two-layer");
    return;
  }
  rep.R_s = st.R_s;
  rep.eta_s = st.eta_s.value_or(0.0);
  rep.eta_ok = rep.eta_s <= rep.eta_bound;
  rep.lower_ok = rep.R_lower * rep.R_lower <= st.R_s * st.R_s;
  rep.upper_ok = st.R_s * st.R_s <= upper_sq;
}

}  // namespace

EstimateReport estimate_beta(const ModelParams& p, double beta, const StationaryResult& st) {
  check_level(p, beta, "beta");
  EstimateReport rep;
  rep.kind = "beta";
  rep.parameter = beta;
  const double sb = p.sigmaBar;
  rep.hypothesis_integral = simpson_uniform(
      [&](double t) { return p.g(t) * (t - beta) * (t - beta); }, beta, sb, kMomentPanels);
  const double gmax = std::max(std::abs(p.g(beta)), std::abs(p.g(sb)));
  rep.hypothesis_tolerance = 1e-8 * std::pow(sb - beta, 3) * gmax;
  rep.hypothesis_holds = std::abs(rep.hypothesis_integral) <= rep.hypothesis_tolerance;
  const double abs_moment = simpson_uniform(
      [&](double t) { return std::abs(p.g(t)) * (t - beta) * (t - beta); }, beta, p.sigmaQ, kMomentPanels);
  rep.nu_threshold = 3.0 * abs_moment / std::pow(p.sigmaQ - beta, 3);
  rep.nu_condition_holds = p.nu >= rep.nu_threshold;
  rep.eta_bound = (p.sigmaQ - beta) / (sb - beta);
  const double e3 = rep.eta_bound * rep.eta_bound * rep.eta_bound;
  fill_bounds(p, st, rep, 6.0 * (sb - beta) / (p.f(p.sigmaQ) * (1.0 - e3)));
  if (!rep.hypothesis_holds) rep.notes.push_back("zero-moment hypothesis fails");
  if (!rep.nu_condition_holds) rep.notes.push_back("nu is below the required threshold");
  rep.satisfied = rep.hypothesis_holds && rep.nu_condition_holds && rep.eta_ok && rep.lower_ok && rep.upper_ok;
  return rep;
}

EstimateReport estimate_delta(const ModelParams& p, double delta, const StationaryResult& st) {
  check_level(p, delta, "delta");
  EstimateReport rep;
  rep.kind = "delta";
  rep.parameter = delta;
  rep.hypothesis_holds = true;
  const double sb = p.sigmaBar;
  const double moment = simpson_uniform(
      [&](double t) { return p.g(t) * (t - delta) * (t - delta); }, p.sigmaQ, sb, kMomentPanels);
  rep.hypothesis_integral = moment;
  rep.nu_threshold = 3.0 * moment / std::pow(p.sigmaQ - delta, 3);
  rep.nu_condition_holds = p.nu >= rep.nu_threshold;
  rep.eta_bound = (p.sigmaQ - delta) / (sb - delta);
  const double e2 = rep.eta_bound * rep.eta_bound;
  fill_bounds(p, st, rep, 6.0 * (sb - delta) / (p.f(p.sigmaQ) * (1.0 - e2)));
  if (!rep.nu_condition_holds) rep.notes.push_back("nu is below the required threshold");
  rep.satisfied = rep.nu_condition_holds && rep.eta_ok && rep.lower_ok && rep.upper_ok;
  return rep;
}

EstimateReport estimate_beta(const ModelParams& p, double beta, const SolverConfig& cfg) {
  check_level(p, beta, "beta");
  return estimate_beta(p, beta, find_stationary(p, cfg));
}

EstimateReport estimate_delta(const ModelParams& p, double delta, const SolverConfig& cfg) {
  check_level(p, delta, "delta");
  return estimate_delta(p, delta, find_stationary(p, cfg));
}

}  // namespace twolayer
