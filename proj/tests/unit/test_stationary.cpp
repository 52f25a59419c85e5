#include "doctest.h"

#include <cmath>

#include "oracle/closed_form.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/linear_oracle.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/stationary.hpp"

using namespace twolayer;

namespace {

ModelParams preset() { return presets::LinearPreset{}.make(); }

}  // namespace

TEST_CASE("small tumours grow at the boundary rate") {
  const auto p = preset();
  CHECK(growth_functional(p, 1e-3) == doctest::Approx(p.g(p.sigmaBar) / 3.0).epsilon(1e-5));
  CHECK_THROWS_AS(growth_functional(p, -1.0), InvalidParams);
}

TEST_CASE("growth functional decreases and is continuous at R_c") {
  const auto p = preset();
  const auto st = find_stationary(p);
  const double Rc = st.R_c;
  double prev = growth_functional(p, 0.01, Rc, {});
  for (double R = 0.1; R <= 3.0 * st.R_s; R += 0.1) {
    const double F = growth_functional(p, R, Rc, {});
    CHECK(F < prev);
    prev = F;
  }
  const double j3 = std::abs(growth_functional(p, Rc - 1e-3, Rc, {}) - growth_functional(p, Rc + 1e-3, Rc, {}));
  const double j4 = std::abs(growth_functional(p, Rc - 1e-4, Rc, {}) - growth_functional(p, Rc + 1e-4, Rc, {}));
  CHECK(j4 < j3);
  CHECK(j3 / j4 == doctest::Approx(10.0).epsilon(0.1));
  CHECK(sub_critical_functional(p, Rc) == doctest::Approx(threshold_functional(p)).epsilon(1e-8));
}

TEST_CASE("growth functional against the independent closed form") {
  const auto p = preset();
  oracle::Linear o;
  const LinearOracle lin(p);
  for (double R : {0.5, 1.5, 2.2, 2.5, 4.0, 9.0}) {
    CHECK(std::abs(growth_functional(p, R) - o.F(R)) <= 1e-8);
    CHECK(std::abs(lin.F(R) - o.F(R)) <= 1e-9);
  }
  CHECK(growth_functional_at_rho(p, 0.5) == doctest::Approx(o.F(o.shot_radius(0.5))).epsilon(1e-8));
}

TEST_CASE("stationary root is unique and matches the oracle") {
  const auto p = preset();
  const auto st = find_stationary(p);
  REQUIRE(st.regime == Regime::TwoLayer);
  CHECK(growth_functional(p, 0.9 * st.R_s) > 0.0);
  CHECK(growth_functional(p, 1.1 * st.R_s) < 0.0);
  CHECK(std::abs(st.F_residual) <= 1e-9);
  CHECK(st.R_s == doctest::Approx(2.250735965758).epsilon(1e-9));
  CHECK(*st.rho_s == doctest::Approx(0.502054691039).epsilon(1e-8));
  CHECK(*st.eta_s == doctest::Approx(*st.rho_s / st.R_s));
  REQUIRE(st.profile);
  CHECK(st.profile->regime == Regime::TwoLayer);
  const LinearOracle lin(p);
  CHECK(st.R_s == doctest::Approx(lin.stationary_radius()).epsilon(1e-9));
}

TEST_CASE("trivial and proliferating-only stationary states") {
  const auto p = preset();
  const auto triv = find_stationary(p.with_sigma_bar(p.sigmaTilde));
  CHECK(triv.regime == Regime::Trivial);
  CHECK(triv.R_s == 0.0);
  const auto one = find_stationary(p.with_sigma_bar(1.6));
  CHECK(one.regime == Regime::ProliferatingOnly);
  CHECK(one.R_s > 0.0);
  CHECK(one.R_s < one.R_c);
  CHECK_FALSE(one.rho_s);
  oracle::Linear o;
  o.sigma_bar = 1.6;
  CHECK(one.R_s == doctest::Approx(o.stationary_radius()).epsilon(1e-8));
}

TEST_CASE("threshold supply") {
  const auto p = preset();
  const double s = sigma_star(p);
  oracle::Linear o;
  CHECK(s == doctest::Approx(o.sigma_star()).epsilon(1e-9));
  CHECK(s == doctest::Approx(1.88460621638).epsilon(1e-9));
  CHECK(threshold_functional(p.with_sigma_bar(s)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(threshold_functional(p.with_sigma_bar(s - 0.05)) < 0.0);
  CHECK(threshold_functional(p.with_sigma_bar(s + 0.05)) > 0.0);
  // sigma_star, find_stationary and critical_radius agree at sigma*
  const auto at = find_stationary(p.with_sigma_bar(s));
  CHECK(std::abs(at.R_s - at.R_c) <= 1e-4 * at.R_c);
  CHECK(s > sigma_bar_g(p));
}

TEST_CASE("zero-moment supply") {
  CHECK(sigma_bar_g(presets::linear(1.0, 0.5, 1.0, 2.0, 1.0, 2.0, 1.0)) == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  CHECK(sigma_bar_g(preset()) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("eta bounds from the formulas") {
  auto p = presets::linear(1.0, 0.5, 1.0, 2.0, 1.0, 3.0, 1.0);
  StationaryResult none;
  CHECK(estimate_beta(p, 0.5, none).eta_bound == doctest::Approx(0.2));
  CHECK(estimate_delta(p, 0.5, none).eta_bound == doctest::Approx(0.2));
  CHECK_THROWS_AS(estimate_beta(p, 1.0, none), InvalidParams);
  CHECK_THROWS_AS(estimate_delta(p, -0.1, none), InvalidParams);
}

TEST_CASE("beta estimate on the preset") {
  const auto p = preset();
  const auto st = find_stationary(p);
  const double beta = 4.0 * p.sigmaTilde - 3.0 * p.sigmaBar;
  CHECK(beta == doctest::Approx(0.15));
  const auto rep = estimate_beta(p, beta, st);
  CHECK(rep.hypothesis_holds);
  CHECK(std::abs(rep.hypothesis_integral) <= rep.hypothesis_tolerance);
  CHECK(rep.nu_threshold == doctest::Approx(0.7125).epsilon(1e-6));
  CHECK(rep.nu_condition_holds);
  CHECK(rep.eta_bound == doctest::Approx(0.85 / 1.8));
  CHECK(rep.eta_ok);
  CHECK(rep.R_lower * rep.R_lower == doctest::Approx(6.0 * 0.95 / 1.95));
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.satisfied);
  // any other beta breaks the zero moment, reported rather than thrown
  const auto off = estimate_beta(p, 0.3, st);
  CHECK_FALSE(off.hypothesis_holds);
  CHECK_FALSE(off.satisfied);
  CHECK_FALSE(off.notes.empty());
}

TEST_CASE("delta estimate on the preset") {
  const auto p = preset();
  const auto st = find_stationary(p);
  const auto rep = estimate_delta(p, 0.1, st);
  CHECK(rep.nu_threshold == doctest::Approx(0.616).epsilon(1e-3));
  CHECK(rep.satisfied);
  CHECK(st.R_s * st.R_s <= rep.R_upper * rep.R_upper);

  const auto weak = estimate_delta(p.with_nu(0.5), 0.1, find_stationary(p.with_nu(0.5)));
  CHECK_FALSE(weak.nu_condition_holds);

  const auto strong_p = p.with_nu(10.0 * estimate_delta(p, 0.5, st).nu_threshold);
  const auto strong = estimate_delta(strong_p, 0.5);
  CHECK(strong.nu_condition_holds);
  CHECK(strong.lower_ok);
  CHECK(strong.upper_ok);
  CHECK(strong.satisfied);
}
