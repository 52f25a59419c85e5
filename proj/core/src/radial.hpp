#pragma once

// Shared machinery for v'' + (2/r) v' = q(v): integration from the regular
// centre (series start) or from an interface r = rho, level-crossing events,
// and densified traces for quadrature.

#include <cstddef>
#include <optional>
#include <vector>

#include "twolayer/dopri5.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"

namespace twolayer::detail {

struct RadialTrace {
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> dv;
};

/// Raw result of one integration. The state is carried in the shifted
/// variable d = v - shift so that profiles hugging sigma0 keep their
/// relative precision. The last segment is clipped at r_end.
struct RadialRun {
  double shift = 0.0;
  double r_start = 0.0;
  double r_end = 0.0;
  double d_end = 0.0;
  double dv_end = 0.0;
  bool hit_level = false;
  std::vector<ode::DenseSegment<2>> segments;  // empty unless recorded
};

/// Shifted value and slope of the centre series d = dc + a r^2 + b r^4.
struct SeriesPoint {
  double d;
  double dv;
};
SeriesPoint center_series(const RateSpec& q, double shift, double d_center, double r);

/// Integrates from (r_start, d, dv) to r_stop, or until shift + d reaches
/// `level` when given. Throws StepFailure on integrator breakdown.
RadialRun integrate_radial(const RateSpec& q, double shift, double r_start, double d_start,
                           double dv_start, double r_stop, std::optional<double> level,
                           const SolverConfig& cfg, bool record);

/// Densifies a run into a trace; every accepted step gets the same even
/// number of uniform sub-intervals, chosen so the run contributes at least
/// `min_points` nodes. The run's first node is included.
void append_trace(const RadialRun& run, std::size_t min_points, RadialTrace& out);

/// Series part [0, r_end] of a centre shot as `pieces` (even) uniform intervals.
void append_series_trace(const RateSpec& q, double shift, double d_center, double r_end,
                         std::size_t pieces, RadialTrace& out);

struct CenterShot {
  double shift = 0.0;
  double d_center = 0.0;  // v(0) - shift
  double radius = 0.0;
  double cutoff = 0.0;  // series used on [0, cutoff]
  RadialRun run;        // integration on [cutoff, radius]; empty when radius <= cutoff
  double d_end = 0.0;
  double dv_end = 0.0;
};

/// One shot from the centre with v(0) = shift + d_center up to `radius`.
CenterShot shoot_from_center(const RateSpec& q, double shift, double d_center, double radius,
                             const SolverConfig& cfg, bool record);

/// Finds v(0) = shift + d, d in [d_lo, d_hi], such that v(radius) = target.
/// The shot map must be increasing in d. When `shrink_lower` is set the
/// lower end is moved geometrically towards zero until it brackets.
CenterShot solve_center_problem(const RateSpec& q, double shift, double radius, double target,
                                double d_lo, double d_hi, bool shrink_lower,
                                const SolverConfig& cfg, const char* what);

/// Trace over [0, radius] of a solved centre problem.
RadialTrace center_trace(const RateSpec& q, const CenterShot& shot, std::size_t min_points);

}  // namespace twolayer::detail
