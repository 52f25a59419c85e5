#include "twolayer/outer_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shell.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/quadrature.hpp"

namespace twolayer {

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Trivial:
      return "Trivial";
    case Regime::QuiescentOnly:
      return "QuiescentOnly";
    case Regime::ProliferatingOnly:
      return "ProliferatingOnly";
    case Regime::TwoLayer:
      return "TwoLayer";
  }
  return "Unknown";
}

double resolved_r_max(const ModelParams& p, double rho, const SolverConfig& cfg) {
  if (cfg.r_max > 0.0) return cfg.r_max;
  const double fq = std::max(p.f(p.sigmaQ), std::numeric_limits<double>::min());
  return rho + 20.0 * (p.sigmaBar - p.sigmaQ) / fq + 10.0;
}

namespace detail {

ShellShot shoot_shell(const ModelParams& p, double rho, double slope, const SolverConfig& cfg,
                      bool record) {
  if (!(p.sigmaBar > p.sigmaQ)) throw InvalidParams("shell problem needs sigmaBar > sigmaQ");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidParams("shell problem needs rho >= 0");
  ShellShot s;
  s.rho = rho;
  s.slope = slope;
  const double shift = p.sigma0;
  const double d_q = p.sigmaQ - shift;
  const double d_bar = p.sigmaBar - shift;
  const double r_max = resolved_r_max(p, rho, cfg);

  double r0 = rho, d0 = d_q, dv0 = slope;
  if (rho == 0.0) {
    r0 = cfg.cutoff_for(0.0);
    const SeriesPoint sp = center_series(p.f, shift, d_q, r0);
    if (sp.d >= d_bar) {
      // sigmaBar is reached inside the series range
      auto gap = [&](double r) { return center_series(p.f, shift, d_q, r).d - d_bar; };
      const double R = find_root(gap, 0.0, r0, d_q - d_bar, sp.d - d_bar, cfg.event_tol, 0.0,
                                 cfg.max_iter, "level crossing", 1.0)
                           .x;
      s.series_end = R;
      s.R = R;
      s.end_slope = center_series(p.f, shift, d_q, R).dv;
      s.run.shift = shift;
      s.run.r_start = s.run.r_end = R;
      s.run.hit_level = true;
      return s;
    }
    s.series_end = r0;
    d0 = sp.d;
    dv0 = sp.dv;
  }
  s.run = integrate_radial(p.f, shift, r0, d0, dv0, r_max, p.sigmaBar, cfg, record);
  if (!s.run.hit_level) {
    throw EventNotReached("shell solution did not reach sigmaBar before r_max = " + std::to_string(r_max));
  }
  s.R = s.run.r_end;
  s.end_slope = s.run.dv_end;
  return s;
}

RadialTrace shell_trace(const ModelParams& p, const ShellShot& shot, std::size_t min_points) {
  RadialTrace out;
  if (shot.rho == 0.0) {
    const double d_q = p.sigmaQ - p.sigma0;
    if (shot.run.segments.empty()) {
      append_series_trace(p.f, p.sigma0, d_q, shot.series_end, min_points, out);
      return out;
    }
    append_series_trace(p.f, p.sigma0, d_q, shot.series_end, 2, out);
    RadialTrace tail;
    append_trace(shot.run, min_points, tail);
    out.r.insert(out.r.end(), tail.r.begin() + 1, tail.r.end());
    out.v.insert(out.v.end(), tail.v.begin() + 1, tail.v.end());
    out.dv.insert(out.dv.end(), tail.dv.begin() + 1, tail.dv.end());
    return out;
  }
  append_trace(shot.run, min_points, out);
  return out;
}

double shell_moment(const ModelParams& p, const ShellShot& shot, const SolverConfig& cfg) {
  const RadialTrace t = shell_trace(p, shot, cfg.min_grid_points);
  std::vector<double> y(t.r.size());
  for (std::size_t i = 0; i < t.r.size(); ++i) y[i] = p.g(t.v[i]) * t.r[i] * t.r[i];
  return simpson(t.r, y);
}

double two_layer_F(const ModelParams& p, double R, const ShellShot& shot, const SolverConfig& cfg) {
  const double rho = shot.rho;
  return (shell_moment(p, shot, cfg) - p.nu * rho * rho * rho / 3.0) / (R * R * R);
}

}  // namespace detail

namespace {

NutrientProfile from_trace(detail::RadialTrace&& t, double R, Regime regime) {
  NutrientProfile prof;
  prof.R = R;
  prof.regime = regime;
  prof.grid = std::move(t.r);
  prof.values = std::move(t.v);
  prof.slopes = std::move(t.dv);
  return prof;
}

}  // namespace

OuterSolution shoot_outer(const ModelParams& p, double rho, const SolverConfig& cfg) {
  const double slope = phi(p, rho, cfg);
  const auto shot = detail::shoot_shell(p, rho, slope, cfg, true);
  auto trace = detail::shell_trace(p, shot, cfg.min_grid_points);
  OuterSolution sol;
  sol.rho = rho;
  sol.R = shot.R;
  sol.start_slope = slope;
  sol.end_slope = shot.end_slope;
  sol.grid = std::move(trace.r);
  sol.values = std::move(trace.v);
  sol.slopes = std::move(trace.dv);
  return sol;
}

double shot_radius(const ModelParams& p, double rho, const SolverConfig& cfg) {
  return detail::shoot_shell(p, rho, phi(p, rho, cfg), cfg, false).R;
}

double critical_radius(const ModelParams& p, const SolverConfig& cfg) {
  return detail::shoot_shell(p, 0.0, 0.0, cfg, false).R;
}

double rho_of_R(const ModelParams& p, double R, const SolverConfig& cfg) {
  return rho_of_R(p, R, critical_radius(p, cfg), cfg);
}

double rho_of_R(const ModelParams& p, double R, double R_c, const SolverConfig& cfg) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("rho_of_R needs R > 0");
  return detail::invert_shot_radius([&](double rho) { return shot_radius(p, rho, cfg); }, R, R_c, cfg);
}

NutrientProfile proliferating_only_profile(const ModelParams& p, double R, const SolverConfig& cfg) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("profile needs R > 0");
  const double shift = p.sigma0;
  const auto shot = detail::solve_center_problem(p.f, shift, R, p.sigmaBar, p.sigmaQ - shift,
                                                 p.sigmaBar - shift, false, cfg,
                                                 "proliferating-only shooting");
  return from_trace(detail::center_trace(p.f, shot, cfg.min_grid_points), R, Regime::ProliferatingOnly);
}

NutrientProfile two_layer_profile(const ModelParams& p, double rho, const SolverConfig& cfg) {
  const InnerSolution in = solve_inner(p, rho, cfg);
  const auto shot = detail::shoot_shell(p, rho, in.phi, cfg, true);
  auto shell = detail::shell_trace(p, shot, cfg.min_grid_points);
  NutrientProfile prof;
  prof.R = shot.R;
  prof.rho = rho;
  prof.regime = Regime::TwoLayer;
  if (rho > 0.0) {
    prof.grid = in.grid;
    prof.values = in.values;
    prof.slopes = in.slopes;
    prof.interface_index = prof.grid.size() - 1;
    prof.grid.insert(prof.grid.end(), shell.r.begin() + 1, shell.r.end());
    prof.values.insert(prof.values.end(), shell.v.begin() + 1, shell.v.end());
    prof.slopes.insert(prof.slopes.end(), shell.dv.begin() + 1, shell.dv.end());
  } else {
    prof.grid = std::move(shell.r);
    prof.values = std::move(shell.v);
    prof.slopes = std::move(shell.dv);
  }
  return prof;
}

NutrientProfile full_profile(const ModelParams& p, double R, const SolverConfig& cfg) {
  if (!(p.sigmaBar > p.sigmaQ)) return full_profile(p, R, 0.0, cfg);
  return full_profile(p, R, critical_radius(p, cfg), cfg);
}

NutrientProfile full_profile(const ModelParams& p, double R, double R_c, const SolverConfig& cfg) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidParams("profile needs R > 0");
  if (!(p.sigmaBar > p.sigmaQ)) {
    // whole tumour quiescent: sigma'' + (2/r) sigma' = h(sigma), sigma(R) = sigmaBar
    NutrientProfile prof;
    if (p.h.is_identically_zero()) {
      detail::RadialTrace t;
      const std::size_t n = cfg.min_grid_points | 1u;
      for (std::size_t i = 0; i < n; ++i) {
        t.r.push_back(R * static_cast<double>(i) / static_cast<double>(n - 1));
        t.v.push_back(p.sigmaBar);
        t.dv.push_back(0.0);
      }
      prof = from_trace(std::move(t), R, Regime::QuiescentOnly);
    } else {
      const double span = p.sigmaBar - p.sigma0;
      const auto shot = detail::solve_center_problem(p.h, p.sigma0, R, p.sigmaBar, 1e-12 * span, span,
                                                     true, cfg, "quiescent-only shooting");
      prof = from_trace(detail::center_trace(p.h, shot, cfg.min_grid_points), R, Regime::QuiescentOnly);
    }
    return prof;
  }
  if (R < R_c) return proliferating_only_profile(p, R, cfg);
  NutrientProfile prof = two_layer_profile(p, rho_of_R(p, R, R_c, cfg), cfg);
  return prof;
}

}  // namespace twolayer
