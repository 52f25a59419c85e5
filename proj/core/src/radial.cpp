#include "radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roots.hpp"
#include "twolayer/errors.hpp"

namespace twolayer::detail {

namespace {

using ode::DenseSegment;
using ode::State;

const char* status_text(ode::Status s) {
  switch (s) {
    case ode::Status::StepUnderflow:
      return "step size underflow";
    case ode::Status::MaxSteps:
      return "step budget exhausted";
    case ode::Status::NonFinite:
      return "non-finite right-hand side";
    default:
      return "integration failure";
  }
}

std::size_t even_at_least(std::size_t n) {
  n = std::max<std::size_t>(n, 2);
  return n + (n % 2);
}

}  // namespace

SeriesPoint center_series(const RateSpec& q, double shift, double d_center, double r) {
  const double vc = shift + d_center;
  const double q0 = q(vc);
  const double a = q0 / 6.0;
  const double b = q.derivative(vc) * q0 / 120.0;
  const double r2 = r * r;
  return {d_center + r2 * (a + b * r2), r * (2.0 * a + 4.0 * b * r2)};
}

RadialRun integrate_radial(const RateSpec& q, double shift, double r_start, double d_start,
                           double dv_start, double r_stop, std::optional<double> level,
                           const SolverConfig& cfg, bool record) {
  RadialRun run;
  run.shift = shift;
  run.r_start = r_start;
  run.r_end = r_start;
  run.d_end = d_start;
  run.dv_end = dv_start;
  if (!(r_start > 0.0)) throw StepFailure("radial integration must start at r > 0");

  const double target = level ? *level - shift : 0.0;
  if (level && d_start >= target) {
    run.hit_level = true;
    return run;
  }
  if (!(r_stop > r_start)) return run;

  auto rhs = [&](double r, const State<2>& y, State<2>& dy) {
    dy[0] = y[1];
    dy[1] = q(shift + y[0]) - 2.0 * y[1] / r;
  };
  ode::StepControl ctl;
  ctl.rtol = cfg.ode_tol;
  ctl.atol = 1e-40;
  ctl.max_steps = cfg.max_steps;
  ctl.h_init = std::min(0.01 * r_start, r_stop - r_start);

  State<2> last_y{d_start, dv_start};
  double last_r = r_start;
  auto observe = [&](const DenseSegment<2>& seg) {
    if (record) run.segments.push_back(seg);
    if (level && seg.y1[0] >= target) {
      auto gap = [&](double r) { return seg(r)[0] - target; };
      const Root root = find_root(gap, seg.t0, seg.t1, seg.y0[0] - target, seg.y1[0] - target,
                                  cfg.event_tol, 0.0, cfg.max_iter, "level crossing", 1.0);
      last_r = root.x;
      last_y = seg(root.x);
      run.hit_level = true;
      return false;
    }
    last_r = seg.t1;
    last_y = seg.y1;
    return true;
  };

  const auto status = ode::integrate<2>(rhs, r_start, State<2>{d_start, dv_start}, r_stop, ctl, observe);
  if (status != ode::Status::Completed && status != ode::Status::Stopped) {
    throw StepFailure(std::string("radial integration: ") + status_text(status) + " near r = " +
                      std::to_string(last_r));
  }
  run.r_end = last_r;
  run.d_end = last_y[0];
  run.dv_end = last_y[1];
  return run;
}

void append_trace(const RadialRun& run, std::size_t min_points, RadialTrace& out) {
  const std::size_t n = run.segments.size();
  if (n == 0) return;
  const std::size_t per = even_at_least((std::max<std::size_t>(min_points, 2) - 1 + n - 1) / n);
  if (out.r.empty()) {
    out.r.push_back(run.r_start);
    out.v.push_back(run.shift + run.segments.front().y0[0]);
    out.dv.push_back(run.segments.front().y0[1]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& seg = run.segments[k];
    const bool last = k + 1 == n;
    const double hi = last ? run.r_end : seg.t1;
    for (std::size_t j = 1; j <= per; ++j) {
      const double r = j == per ? hi : seg.t0 + (hi - seg.t0) * static_cast<double>(j) / static_cast<double>(per);
      const State<2> y = (j == per && !last) ? seg.y1 : seg(r);
      out.r.push_back(r);
      out.v.push_back(run.shift + y[0]);
      out.dv.push_back(y[1]);
    }
  }
}

void append_series_trace(const RateSpec& q, double shift, double d_center, double r_end,
                         std::size_t pieces, RadialTrace& out) {
  pieces = even_at_least(pieces);
  for (std::size_t j = 0; j <= pieces; ++j) {
    const double r = r_end * static_cast<double>(j) / static_cast<double>(pieces);
    const SeriesPoint s = center_series(q, shift, d_center, r);
    out.r.push_back(r);
    out.v.push_back(shift + s.d);
    out.dv.push_back(s.dv);
  }
}

CenterShot shoot_from_center(const RateSpec& q, double shift, double d_center, double radius,
                             const SolverConfig& cfg, bool record) {
  CenterShot shot;
  shot.shift = shift;
  shot.d_center = d_center;
  shot.radius = radius;
  const double cut = cfg.cutoff_for(radius);
  if (radius <= cut) {
    const SeriesPoint s = center_series(q, shift, d_center, radius);
    shot.cutoff = radius;
    shot.d_end = s.d;
    shot.dv_end = s.dv;
    return shot;
  }
  const SeriesPoint s = center_series(q, shift, d_center, cut);
  shot.cutoff = cut;
  shot.run = integrate_radial(q, shift, cut, s.d, s.dv, radius, std::nullopt, cfg, record);
  shot.d_end = shot.run.d_end;
  shot.dv_end = shot.run.dv_end;
  return shot;
}

CenterShot solve_center_problem(const RateSpec& q, double shift, double radius, double target,
                                double d_lo, double d_hi, bool shrink_lower,
                                const SolverConfig& cfg, const char* what) {
  const double goal = target - shift;
  auto miss = [&](double d) {
    const double v = shoot_from_center(q, shift, d, radius, cfg, false).d_end - goal;
    if (!std::isfinite(v)) throw NonFiniteEvaluation(std::string(what) + ": non-finite shot");
    return v;
  };

  const double m_hi = miss(d_hi);
  if (m_hi < 0.0) throw BracketFailure(std::string(what) + ": upper centre value undershoots");
  double m_lo = m_hi == 0.0 ? -1.0 : miss(d_lo);
  int tries = 0;
  while (m_lo > 0.0 && shrink_lower) {
    if (++tries > cfg.max_iter || d_lo < 1e-290) {
      throw NoConvergence(std::string(what) + ": centre value not bracketed from below");
    }
    d_lo *= 1e-8;
    m_lo = miss(d_lo);
  }
  double d = d_hi;
  if (m_hi != 0.0) {
    const double f_tol = 0.1 * cfg.bvp_tol * std::max(std::abs(goal), std::numeric_limits<double>::min());
    d = find_root(miss, d_lo, d_hi, m_lo, m_hi, 4e-16, f_tol, cfg.max_iter, what).x;
  }
  return shoot_from_center(q, shift, d, radius, cfg, true);
}

RadialTrace center_trace(const RateSpec& q, const CenterShot& shot, std::size_t min_points) {
  RadialTrace out;
  if (shot.run.segments.empty()) {
    append_series_trace(q, shot.shift, shot.d_center, shot.cutoff, min_points, out);
    return out;
  }
  append_series_trace(q, shot.shift, shot.d_center, shot.cutoff, 2, out);
  RadialTrace tail;
  append_trace(shot.run, min_points, tail);
  out.r.insert(out.r.end(), tail.r.begin() + 1, tail.r.end());
  out.v.insert(out.v.end(), tail.v.begin() + 1, tail.v.end());
  out.dv.insert(out.dv.end(), tail.dv.begin() + 1, tail.dv.end());
  return out;
}

}  // namespace twolayer::detail
