#pragma once

// Test-only reference for f = sigma, h = lambda sigma, g = mu (sigma - sigmaTilde),
// sigma0 = 0. Nothing here calls into the library: plain bisection and
// adaptive Simpson on the closed-form profiles.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::runtime_error("oracle::bisect: no sign change");
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail_ {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail_

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  // a few fixed panels first so the recursion cannot be fooled by symmetry
  const int panels = 8;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + (b - a) * k / panels, x1 = a + (b - a) * (k + 1) / panels;
    const double f0 = f(x0), f1 = f(x1), fm = f(0.5 * (x0 + x1));
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += detail_::simpson_rec(f, x0, x1, f0, fm, f1, whole, tol / panels, 40);
  }
  return total;
}

inline double sinhc(double x) { return std::abs(x) < 1e-5 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }

struct Linear {
  double lambda = 0.5;
  double mu = 1.0;
  double sigma_tilde = 1.5;
  double sigma_q = 1.0;
  double sigma_bar = 1.95;
  double nu = 1.0;

  double k() const { return std::sqrt(lambda); }

  // x coth x with x = sqrt(lambda) rho
  double a(double rho) const {
    const double x = k() * rho;
    if (x < 1e-4) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
  }

  double inner(double r, double rho) const { return sigma_q * sinhc(k() * r) / sinhc(k() * rho); }

  double phi(double rho) const {
    if (rho == 0.0) return 0.0;
    const double x = k() * rho;
    if (x < 1e-4) return sigma_q * lambda * rho / 3.0;
    return sigma_q * (a(rho) - 1.0) / rho;
  }

  double outer(double r, double rho) const {
    if (r == 0.0) return sigma_q;  // rho = 0 limit of the same formula
    return sigma_q / r * (a(rho) * std::sinh(r - rho) + rho * std::cosh(r - rho));
  }

  double sub_critical(double r, double R) const { return sigma_bar * sinhc(r) / sinhc(R); }

  double shot_radius(double rho) const {
    auto gap = [&](double r) { return outer(r, rho) - sigma_bar; };
    double hi = rho + 1.0;
    while (gap(hi) < 0.0) hi = rho + 2.0 * (hi - rho);
    return bisect(gap, std::max(rho, 1e-300), hi);
  }

  double critical_radius() const { return shot_radius(0.0); }

  double rho_of_R(double R) const {
    const double Rc = critical_radius();
    if (R <= Rc) return 0.0;
    return bisect([&](double rho) { return shot_radius(rho) - R; }, 0.0, R);
  }

  double g(double s) const { return mu * (s - sigma_tilde); }

  double F(double R) const {
    const double Rc = critical_radius();
    if (R < Rc) {
      const double m = integrate([&](double r) { return g(sub_critical(r, R)) * r * r; }, 0.0, R);
      return m / (R * R * R);
    }
    const double rho = rho_of_R(R);
    const double m = integrate([&](double r) { return g(outer(r, rho)) * r * r; }, rho, R);
    return (m - nu * rho * rho * rho / 3.0) / (R * R * R);
  }

  double stationary_radius() const {
    const double Rc = critical_radius();
    const double Fc = F(Rc);
    double lo = Rc, hi = Rc;
    if (Fc > 0.0) {
      hi = 2.0 * Rc;
      while (F(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
      }
    } else {
      lo = 0.5 * Rc;
      while (F(lo) < 0.0) {
        hi = lo;
        lo *= 0.5;
      }
    }
    return bisect([&](double R) { return F(R); }, lo, hi);
  }

  // F at rho = 0 as a function of the boundary supply
  double threshold(double sb) const {
    Linear c = *this;
    c.sigma_bar = sb;
    const double Rc = c.critical_radius();
    const double m = integrate([&](double r) { return g(c.outer(r, 0.0)) * r * r; }, 0.0, Rc);
    return m / (Rc * Rc * Rc);
  }

  double sigma_star() const {
    double hi = 2.0 * sigma_tilde;
    while (threshold(hi) < 0.0) hi *= 2.0;
    return bisect([&](double s) { return threshold(s); }, sigma_tilde, hi);
  }
};

}  // namespace oracle
