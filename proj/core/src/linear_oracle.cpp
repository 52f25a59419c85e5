#include "twolayer/linear_oracle.hpp"

#include <cmath>

#include "roots.hpp"
#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

// sinh(x) / x
double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0 * (1.0 + x * x / 20.0);
  return std::sinh(x) / x;
}

// d/dx sinhc(x)
double sinhc_prime(double x) {
  if (std::abs(x) < 1e-3) return x / 3.0 * (1.0 + x * x / 10.0 * (1.0 + x * x / 28.0));
  return (x * std::cosh(x) - std::sinh(x)) / (x * x);
}

// R cosh R - sinh R without cancellation at small R
double cosh_moment(double R) {
  if (std::abs(R) < 1e-2) {
    const double R2 = R * R;
    return R * R2 * (1.0 / 3.0 + R2 * (1.0 / 30.0 + R2 * (1.0 / 840.0 + R2 / 45360.0)));
  }
  return R * std::cosh(R) - std::sinh(R);
}

template <class G>
double root_above(G&& g, double lo, double step, const char* what) {
  double g_lo = g(lo);
  double hi = lo + step;
  double g_hi = g(hi);
  while ((g_hi > 0.0) == (g_lo > 0.0) && g_hi != 0.0) {
    lo = hi;
    g_lo = g_hi;
    step *= 2.0;
    hi = lo + step;
    if (hi > 1e4) throw BracketFailure(std::string(what) + ": no sign change");
    g_hi = g(hi);
  }
  return detail::find_root(g, lo, hi, g_lo, g_hi, 1e-15, 0.0, 400, what, 1e-300).x;
}

}  // namespace

LinearOracle::LinearOracle(const ModelParams& p) {
  const auto f = p.f.as_linear();
  const auto h = p.h.as_linear();
  const auto g = p.g.as_linear();
  if (!f || !h || !g) throw PresetMismatch("linear oracle needs linear f, h and g");
  if (f->slope != 1.0 || f->zero_at != 0.0) throw PresetMismatch("linear oracle needs f(sigma) = sigma");
  if (h->zero_at != 0.0 || h->slope < 0.0 || h->slope > 1.0) {
    throw PresetMismatch("linear oracle needs h(sigma) = lambda sigma with 0 <= lambda <= 1");
  }
  if (!(g->slope > 0.0) || g->zero_at != p.sigmaTilde) {
    throw PresetMismatch("linear oracle needs g(sigma) = mu (sigma - sigmaTilde), mu > 0");
  }
  if (p.sigma0 != 0.0) throw PresetMismatch("linear oracle needs sigma0 = 0");
  lambda_ = h->slope;
  mu_ = g->slope;
  sigma_tilde_ = p.sigmaTilde;
  sigma_hat_ = p.sigmaQ;
  sigma_bar_ = p.sigmaBar;
  nu_ = p.nu;
}

double LinearOracle::a(double rho) const {
  const double x = std::sqrt(lambda_) * rho;
  if (x < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 * (1.0 - x2 / 15.0 * (1.0 - 2.0 * x2 / 21.0));
  }
  return x / std::tanh(x);
}

double LinearOracle::inner(double r, double rho) const {
  const double s = std::sqrt(lambda_);
  return sigma_hat_ * sinhc(s * r) / sinhc(s * rho);
}

double LinearOracle::inner_slope(double r, double rho) const {
  const double s = std::sqrt(lambda_);
  return sigma_hat_ * s * sinhc_prime(s * r) / sinhc(s * rho);
}

double LinearOracle::phi(double rho) const {
  if (rho == 0.0) return 0.0;
  const double x = std::sqrt(lambda_) * rho;
  if (x < 1e-3) {
    // (a - 1) / rho without cancellation
    const double x2 = x * x;
    return sigma_hat_ * lambda_ * rho / 3.0 * (1.0 - x2 / 15.0 * (1.0 - 2.0 * x2 / 21.0));
  }
  return sigma_hat_ * (a(rho) - 1.0) / rho;
}

double LinearOracle::outer(double r, double rho) const {
  const double u = r - rho;
  if (rho == 0.0) return sigma_hat_ * sinhc(r);
  return sigma_hat_ / r * (a(rho) * std::sinh(u) + rho * std::cosh(u));
}

double LinearOracle::outer_slope(double r, double rho) const {
  if (rho == 0.0) return sigma_hat_ * sinhc_prime(r);
  const double u = r - rho;
  const double br = a(rho) * std::cosh(u) + rho * std::sinh(u);
  return -outer(r, rho) / r + sigma_hat_ / r * br;
}

double LinearOracle::sub_critical(double r, double R) const {
  return sigma_bar_ * sinhc(r) / sinhc(R);
}

double LinearOracle::L(double rho, double R) const {
  return a(rho) * std::sinh(R - rho) + rho * std::cosh(R - rho) - sigma_bar_ / sigma_hat_ * R;
}

double LinearOracle::L0(double rho, double R) const {
  return std::sinh(R - rho) + rho * std::cosh(R - rho) - sigma_bar_ / sigma_hat_ * R;
}

double LinearOracle::critical_radius() const {
  const double k = sigma_bar_ / sigma_hat_;
  if (!(k > 1.0)) throw InvalidParams("critical radius needs sigmaBar > sigmaQ");
  return root_above([&](double R) { return sinhc(R) - k; }, 0.0, 1.0, "oracle R_c");
}

double LinearOracle::shot_radius(double rho) const {
  if (rho == 0.0) return critical_radius();
  return root_above([&](double R) { return L(rho, R); }, rho, 1.0, "oracle R(rho)");
}

double LinearOracle::rho_of_R(double R) const {
  const double R_c = critical_radius();
  if (R <= R_c) return 0.0;
  auto g = [&](double rho) { return L(rho, R); };
  return detail::find_root(g, 0.0, R, g(0.0), g(R), 1e-15, 0.0, 400, "oracle rho(R)", 1e-300).x;
}

double LinearOracle::profile(double r, double R) const {
  if (R < critical_radius()) return sub_critical(r, R);
  const double rho = rho_of_R(R);
  return r <= rho ? inner(r, rho) : outer(r, rho);
}

double LinearOracle::R_f(double R, double rho) const {
  const double u = R - rho;
  const double Is = R * std::cosh(u) - std::sinh(u) - rho;
  const double Ic = R * std::sinh(u) - std::cosh(u) + 1.0;
  const double shell = sigma_hat_ * (a(rho) * Is + rho * Ic);
  const double rho3 = rho * rho * rho;
  return (mu_ * (shell - sigma_tilde_ * (R * R * R - rho3) / 3.0) - nu_ * rho3 / 3.0) / (R * R * R);
}

double LinearOracle::F(double R) const {
  if (!(R > 0.0)) throw InvalidParams("oracle F needs R > 0");
  const double R_c = critical_radius();
  if (R < R_c) {
    const double w = sigma_bar_ * cosh_moment(R) / sinhc(R) / (R * R * R);
    return mu_ * (w - sigma_tilde_ / 3.0);
  }
  if (R == R_c) return threshold_functional();
  return R_f(R, rho_of_R(R));
}

double LinearOracle::threshold_functional() const {
  const double R = critical_radius();
  return mu_ * (sigma_hat_ * cosh_moment(R) / (R * R * R) - sigma_tilde_ / 3.0);
}

double LinearOracle::stationary_radius() const {
  if (!(sigma_bar_ > sigma_tilde_)) return 0.0;
  const double R_c = critical_radius();
  auto g = [&](double R) { return F(R); };
  if (threshold_functional() > 0.0) return root_above(g, R_c, R_c, "oracle R_s");
  return detail::find_root(g, 1e-8 * R_c, R_c, g(1e-8 * R_c), threshold_functional(), 1e-15, 0.0, 400,
                           "oracle R_s", 1e-300)
      .x;
}

double LinearOracle::stationary_rho() const { return rho_of_R(stationary_radius()); }

}  // namespace twolayer
