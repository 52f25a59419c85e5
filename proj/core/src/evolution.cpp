#include "twolayer/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roots.hpp"
#include "twolayer/dopri5.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/stationary.hpp"

namespace twolayer {

namespace {

Regime label(double R, double R_c) { return R > R_c ? Regime::TwoLayer : Regime::ProliferatingOnly; }

Trajectory quiescent_decay(const ModelParams& p, double R0, double t_end, const EvolveOptions& opts,
                           const SolverConfig& cfg) {
  Trajectory tr;
  const std::size_t n = std::max<std::size_t>(opts.analytic_samples, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
    tr.samples.push_back({t, R0 * std::exp(-p.nu * t / 3.0), std::nullopt, Regime::QuiescentOnly});
  }
  tr.R_s = 0.0;
  if (tr.samples.back().R <= cfg.conv_tol) tr.converged_to = 0.0;
  return tr;
}

}  // namespace

double default_t_end(const ModelParams& p) {
  const double rate = std::max({p.nu / 3.0, std::abs(p.g(p.sigmaBar)) / 3.0, 1e-12});
  return 30.0 / rate;
}

Trajectory evolve(const ModelParams& p, double R0, double t_end, const SolverConfig& cfg,
                  const EvolveOptions& opts) {
  cfg.validate();
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw InvalidParams("evolve needs R0 > 0");
  if (!(t_end > 0.0)) t_end = default_t_end(p);
  if (!(p.sigmaBar > p.sigmaQ)) return quiescent_decay(p, R0, t_end, opts, cfg);

  Trajectory tr;
  const double R_c = critical_radius(p, cfg);
  tr.R_c = R_c;
  if (p.sigmaBar > p.sigmaTilde) {
    tr.R_s = find_stationary(p, cfg).R_s;
  } else {
    tr.R_s = 0.0;
  }

  auto F = [&](double R) { return growth_functional(p, R, R_c, cfg); };
  {
    SolverConfig fine = cfg;
    fine.min_grid_points = 2 * cfg.min_grid_points + 1;
    tr.noise_floor = std::abs(F(R0) - growth_functional(p, R0, R_c, fine));
  }
  tr.atol = std::max(10.0 * tr.noise_floor * R0, 1e-14 * R0);

  auto rhs = [&](double, const ode::State<1>& y, ode::State<1>& dy) {
    const double R = y[0];
    dy[0] = (R > 0.0 && std::isfinite(R)) ? R * F(R) : std::numeric_limits<double>::quiet_NaN();
  };
  auto sample_at = [&](double t, double R) {
    TrajectorySample s{t, R, std::nullopt, label(R, R_c)};
    if (opts.record_rho && R > R_c) s.rho = rho_of_R(p, R, R_c, cfg);
    return s;
  };

  tr.samples.push_back(sample_at(0.0, R0));
  bool stop = false;
  auto observe = [&](const ode::DenseSegment<1>& seg) {
    const double a = seg.y0[0] - R_c;
    const double b = seg.y1[0] - R_c;
    if ((a > 0.0) != (b > 0.0) && a != 0.0) {
      auto gap = [&](double t) { return seg(t)[0] - R_c; };
      const double T = detail::find_root(gap, seg.t0, seg.t1, a, b, cfg.event_tol, 0.0, cfg.max_iter,
                                         "R_c crossing", 1.0)
                           .x;
      tr.transition_times.push_back({T, label(seg.y0[0], R_c), label(seg.y1[0], R_c)});
      if (opts.stop_at_first_transition) {
        tr.samples.push_back(sample_at(seg.t1, seg.y1[0]));
        stop = true;
        return false;
      }
    }
    tr.samples.push_back(sample_at(seg.t1, seg.y1[0]));
    return true;
  };

  ode::StepControl ctl;
  ctl.rtol = cfg.evolve_tol;
  ctl.atol = tr.atol;
  ctl.max_steps = cfg.max_steps;
  const auto status = ode::integrate<1>(rhs, 0.0, ode::State<1>{R0}, t_end, ctl, observe);
  if (status != ode::Status::Completed && !(stop && status == ode::Status::Stopped)) {
    throw StepFailure("evolve: integrator failed at t = " + std::to_string(tr.samples.back().t));
  }

  if (tr.R_s && std::abs(tr.samples.back().R - *tr.R_s) <= cfg.conv_tol) tr.converged_to = tr.R_s;
  return tr;
}

std::optional<double> transition_time(const ModelParams& p, double R0, const SolverConfig& cfg) {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw InvalidParams("transition_time needs R0 > 0");
  if (!(p.sigmaBar > p.sigmaQ)) return std::nullopt;
  const double R_c = critical_radius(p, cfg);
  const double F_c = threshold_functional(p, cfg);
  const bool down = F_c < 0.0 && R0 > R_c;
  const bool up = F_c > 0.0 && R0 < R_c;
  if (!down && !up) return std::nullopt;

  EvolveOptions opts;
  opts.record_rho = false;
  opts.stop_at_first_transition = true;
  double t_end = default_t_end(p);
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Trajectory tr = evolve(p, R0, t_end, cfg, opts);
    if (!tr.transition_times.empty()) return tr.transition_times.front().t;
    t_end *= 4.0;
  }
  throw NoConvergence("transition_time: no crossing of R_c found");
}

}  // namespace twolayer
