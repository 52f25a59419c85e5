#include "doctest.h"

#include <cmath>

#include "oracle/closed_form.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/necrotic_limit.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/stationary.hpp"

using namespace twolayer;

namespace {

ModelParams preset() { return presets::LinearPreset{}.make(); }

}  // namespace

TEST_CASE("admissible fluxes") {
  const auto p = preset();
  CHECK(K_limit(p) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(shoot_aux(p, 0.5, -0.1), InadmissibleK);
  CHECK_THROWS_AS(shoot_aux(p, 0.5, K_limit(p)), InadmissibleK);
}

TEST_CASE("zero flux from the centre reproduces R_c") {
  const auto p = presets::linear(1.0, 0.0, 1.0, 2.0, 1.0, 2.0, 1.0);
  CHECK(aux_radius(p, 0.0, 0.0) == doctest::Approx(critical_radius(p)).epsilon(1e-12));
  CHECK(aux_radius(preset(), 0.0, 0.2) == doctest::Approx(critical_radius(preset())).epsilon(1e-12));
}

TEST_CASE("aux radius monotone in K and rho") {
  const auto p = preset();
  double prev = aux_radius(p, 0.7, 0.0);
  for (double K : {0.05, 0.1, 0.2, 0.3}) {
    const double R = aux_radius(p, 0.7, K);
    CHECK(R < prev);
    prev = R;
  }
  prev = aux_radius(p, 0.1, 0.15);
  for (double rho : {0.3, 0.8, 1.5, 3.0}) {
    const double R = aux_radius(p, rho, 0.15);
    CHECK(R > prev);
    prev = R;
  }
}

TEST_CASE("flux Phi(rho)/rho recovers the two-layer shell") {
  const auto p = preset();
  for (double rho : {0.2, 0.5, 1.0, 2.0}) {
    const double K = phi(p, rho) / rho;
    CHECK(std::abs(aux_radius(p, rho, K) - shot_radius(p, rho)) <= 1e-10);
  }
}

TEST_CASE("growth functional in K") {
  const auto p = preset();
  const double Rc = critical_radius(p);
  const double F0 = growth_functional_K(p, Rc, 0.0, Rc, {});
  for (double K : {0.1, 0.2, 0.3}) CHECK(std::abs(growth_functional_K(p, Rc, K, Rc, {}) - F0) <= 1e-9);
  for (double R : {2.5, 3.5, 6.0}) {
    double prevK = growth_functional_K(p, R, 0.0, Rc, {});
    for (double K : {0.1, 0.2, 0.3}) {
      const double F = growth_functional_K(p, R, K, Rc, {});
      CHECK(F < prevK);
      prevK = F;
    }
  }
  for (double K : {0.0, 0.2}) {
    double prevR = growth_functional_K(p, 2.2, K, Rc, {});
    for (double R : {2.6, 3.5, 6.0}) {
      const double F = growth_functional_K(p, R, K, Rc, {});
      CHECK(F < prevR);
      prevR = F;
    }
    CHECK(growth_functional_K(p, 60.0, K, Rc, {}) == doctest::Approx(-p.nu / 3.0).epsilon(0.05));
  }
}

TEST_CASE("necrotic stationary radius") {
  const auto p = preset();
  const double Rnec = stationary_K(p, 0.0);
  // lambda = 0 closed form
  oracle::Linear o;
  o.lambda = 0.0;
  CHECK(Rnec == doctest::Approx(o.stationary_radius()).epsilon(1e-8));
  CHECK(stationary_K(p, 0.1) < Rnec);
  CHECK(stationary_K(p, 0.2) < stationary_K(p, 0.1));
  // sandwich around the general model
  const double Rs = find_stationary(p).R_s;
  CHECK(Rs < Rnec);
  const double Kmax = p.h(p.sigmaQ) / 3.0;
  CHECK(stationary_K(p, Kmax) < Rs);
  CHECK_THROWS_AS(stationary_K(p.with_sigma_bar(1.6), 0.0), BracketFailure);
}

TEST_CASE("h to zero sweep") {
  presets::LinearPreset lp;
  lp.lambda = 1.0;
  const auto sw = limit_sweep(lp.make(), {1.0, 0.5, 0.1, 0.01, 1e-3, 1e-4});
  CHECK(sw.R_increasing);
  CHECK(sw.below_R_nec);
  CHECK(sw.rho_approaching);
  CHECK(sw.gap_R.back() <= 1e-3 * sw.R_nec);
  CHECK(sw.R_s_values[1] == doctest::Approx(find_stationary(presets::LinearPreset{}.make()).R_s).epsilon(1e-9));
  CHECK_THROWS_AS(limit_sweep(lp.make(), {0.5, 1.0}), InvalidParams);
  CHECK_THROWS_AS(limit_sweep(lp.make(), {1.0, 0.0}), InvalidParams);
}
