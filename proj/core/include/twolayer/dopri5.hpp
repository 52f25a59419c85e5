#pragma once

// Dormand-Prince 5(4) with the standard 4th-order continuous extension.
// Coefficients follow Hairer, Norsett & Wanner, "Solving ODEs I", DOPRI5.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace twolayer::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-300;   // effectively pure relative control
  double h_init = 0.0;    // 0: automatic
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
};

enum class Status {
  Completed,      // reached t_end
  Stopped,        // the observer asked to stop
  StepUnderflow,  // step size collapsed below the floating-point spacing of t
  MaxSteps,
  NonFinite,      // right-hand side produced inf/nan
};

/// Accepted step [t0, t1] with its continuous extension.
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  State<N> y0{};
  State<N> y1{};
  std::array<State<N>, 5> rc{};

  State<N> operator()(double t) const {
    const double h = t1 - t0;
    const double th = h == 0.0 ? 0.0 : (t - t0) / h;
    const double th1 = 1.0 - th;
    State<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
    }
    return y;
  }
};

namespace dp5 {
inline constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
inline constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0,
                        a42 = -56.0 / 15.0, a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0,
                        a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0,
                        a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0,
                        a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp5

template <std::size_t N>
bool all_finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

/// Integrates y' = rhs(t, y) from t0 to t_end (> t0). `observe` receives each
/// accepted DenseSegment and returns false to stop early.
/// rhs signature: void(double t, const State<N>& y, State<N>& dy).
template <std::size_t N, class Rhs, class Observer>
Status integrate(Rhs&& rhs, double t0, State<N> y, double t_end, const StepControl& ctl,
                 Observer&& observe) {
  using namespace dp5;
  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
  const double span = t_end - t0;
  if (!(span > 0.0)) return Status::Completed;

  State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  rhs(t0, y, k1);
  if (!all_finite(k1)) return Status::NonFinite;

  auto scale = [&](double a, double b) {
    return ctl.atol + ctl.rtol * std::max(std::abs(a), std::abs(b));
  };

  double h = ctl.h_init;
  if (!(h > 0.0)) {
    // Hairer's starting step heuristic.
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = scale(y[i], y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 * span : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, span);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * k1[i];
    rhs(t0 + h, ytmp, k2);
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = scale(y[i], y[i]);
      der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6 * span, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, span});
  }
  h = std::min(h, ctl.h_max);

  double t = t0;
  bool reject = false;
  DenseSegment<N> seg;
  for (std::size_t nstep = 0; nstep < ctl.max_steps; ++nstep) {
    bool last = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }
    if (h <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      return Status::StepUnderflow;
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double tph = last ? t_end : t + h;
    rhs(tph, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(tph, ynew, k7);

    double err = 0.0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sk = scale(y[i], ynew[i]);
        err += (e / sk) * (e / sk);
      }
      err = std::sqrt(err / static_cast<double>(N));
      finite = std::isfinite(err);
    }
    if (!finite) {
      // Shrink aggressively; the solution may be approaching a blow-up.
      h *= 0.1;
      reject = true;
      continue;
    }

    double fac = safety * std::pow(std::max(err, 1e-300), -0.2);
    if (err <= 1.0) {
      seg.t0 = t;
      seg.t1 = tph;
      seg.y0 = y;
      seg.y1 = ynew;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = ynew[i] - y[i];
        const double bspl = h * k1[i] - dy;
        seg.rc[0][i] = y[i];
        seg.rc[1][i] = dy;
        seg.rc[2][i] = bspl;
        seg.rc[3][i] = dy - h * k7[i] - bspl;
        seg.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      k1 = k7;
      y = ynew;
      t = tph;
      if (!observe(static_cast<const DenseSegment<N>&>(seg))) return Status::Stopped;
      if (last) return Status::Completed;
      fac = std::clamp(fac, fac_min, reject ? 1.0 : fac_max);
      reject = false;
      h = std::min(h * fac, ctl.h_max);
    } else {
      h *= std::clamp(fac, fac_min, 1.0);
      reject = true;
    }
  }
  return Status::MaxSteps;
}

}  // namespace twolayer::ode
