#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle/closed_form.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/rate_models.hpp"

using namespace twolayer;

namespace {

ModelParams with_lambda(double lambda) {
  presets::LinearPreset lp;
  lp.lambda = lambda;
  return lp.make();
}

}  // namespace

TEST_CASE("zero radius gives the single-point core") {
  const auto sol = solve_inner(with_lambda(0.5), 0.0);
  CHECK(sol.phi == 0.0);
  CHECK(phi(with_lambda(0.5), 0.0) == 0.0);
  REQUIRE(sol.grid.size() == 1);
  CHECK(sol.values[0] == 1.0);
}

TEST_CASE("no consumption keeps the core at sigmaQ") {
  const auto p = with_lambda(0.5).with_h(RateSpec::zero());
  const auto sol = solve_inner(p, 1.7);
  CHECK(sol.phi == 0.0);
  for (double v : sol.values) CHECK(v == 1.0);
  CHECK(sol.grid.back() == doctest::Approx(1.7));
}

TEST_CASE("unit uptake at rho = 1 matches the sinh profile") {
  const auto sol = solve_inner(with_lambda(1.0), 1.0);
  CHECK(sol.center_value == doctest::Approx(0.850918).epsilon(1e-6));
  CHECK(sol.center_value == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-9));
  CHECK(sol.phi == doctest::Approx(0.313035).epsilon(1e-6));
  CHECK(sol.phi == doctest::Approx(1.0 / std::tanh(1.0) - 1.0).epsilon(1e-9));
  CHECK(sol.end_slope == doctest::Approx(sol.phi).epsilon(1e-8));
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double r = sol.grid[i];
    const double exact = r == 0.0 ? 1.0 / std::sinh(1.0) : std::sinh(r) / (r * std::sinh(1.0));
    CHECK(std::abs(sol.values[i] - exact) <= 1e-8);
  }
}

TEST_CASE("flux at rho = 0.5 respects the linear bound") {
  const double ph = phi(with_lambda(1.0), 0.5);
  CHECK(ph == doctest::Approx(0.163953).epsilon(1e-6));
  CHECK(ph < 0.5 / 3.0);
}

TEST_CASE("random linear cores agree with the closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.01, 1.0), rr(0.05, 4.0);
  for (int k = 0; k < 30; ++k) {
    const double lambda = lam(rng), rho = rr(rng);
    oracle::Linear o;
    o.lambda = lambda;
    const auto sol = solve_inner(with_lambda(lambda), rho);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) worst = std::max(worst, std::abs(sol.values[i] - o.inner(sol.grid[i], rho)));
    CHECK(worst <= 1e-6);
    CHECK(std::abs(sol.phi - o.phi(rho)) <= 1e-8);
  }
}

TEST_CASE("flux grows with rho and the core deepens") {
  const auto p = with_lambda(0.7);
  double prev = 0.0;
  for (double rho = 0.1; rho < 5.0; rho += 0.3) {
    const double ph = phi(p, rho);
    CHECK(ph > prev);
    CHECK(ph < p.h(p.sigmaQ) * rho / 3.0);
    prev = ph;
  }
  // V(r, rho1) > V(r, rho2) on [0, rho1]
  const auto a = solve_inner(p, 1.0);
  const auto b = solve_inner(p, 2.0);
  oracle::Linear o;
  o.lambda = 0.7;
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    const double r = a.grid[i];
    const auto it = std::lower_bound(b.grid.begin(), b.grid.end(), r);
    if (it == b.grid.end() || it == b.grid.begin()) continue;
    const std::size_t j = static_cast<std::size_t>(it - b.grid.begin());
    const double w = (r - b.grid[j - 1]) / (b.grid[j] - b.grid[j - 1]);
    const double vb = (1 - w) * b.values[j - 1] + w * b.values[j];
    CHECK(a.values[i] > vb);
  }
}

TEST_CASE("profile is convex and satisfies the ODE by finite differences") {
  presets::LinearPreset lp;
  lp.lambda = 0.8;
  auto p = lp.make();
  // nonlinear uptake
  p.h = RateSpec::custom([](double s) { return 0.8 * s * s; }, [](double s) { return 1.6 * s; });
  SolverConfig cfg;
  cfg.min_grid_points = 4001;
  cfg.ode_tol = 1e-12;
  const double rho = 1.5;
  const auto sol = solve_inner(p, rho, cfg);
  for (std::size_t i = 1; i < sol.grid.size(); ++i) {
    CHECK(sol.values[i] >= sol.values[i - 1]);
    CHECK(sol.slopes[i] >= sol.slopes[i - 1] - 1e-12);
  }
  const double cut = cfg.cutoff_for(rho);
  double worst = 0.0;
  const auto& x = sol.grid;
  const auto& s = sol.slopes;
  for (std::size_t i = 2; i + 2 < x.size(); ++i) {
    const double r = x[i];
    if (r <= 10.0 * cut) continue;
    const double h = x[i + 1] - x[i];
    bool even = true;
    for (std::size_t k = i - 2; k < i + 2; ++k) even = even && std::abs(x[k + 1] - x[k] - h) <= 1e-9 * h;
    if (!even) continue;
    // five-point first derivative of v'
    const double d2 = (s[i - 2] - 8.0 * s[i - 1] + 8.0 * s[i + 1] - s[i + 2]) / (12.0 * h);
    worst = std::max(worst, std::abs(d2 + 2.0 / r * s[i] - p.h(sol.values[i])));
  }
  CHECK(worst <= 10.0 * cfg.bvp_tol);
  CHECK(sol.values.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("large cores keep a tiny positive centre value") {
  const auto sol = solve_inner(with_lambda(1.0), 40.0);
  CHECK(sol.center_value > 0.0);
  CHECK(sol.center_value < 1e-14);
  CHECK(sol.phi == doctest::Approx((40.0 / std::tanh(40.0) - 1.0) / 40.0).epsilon(1e-8));
}
