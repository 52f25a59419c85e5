#include "doctest.h"

#include <cmath>
#include <limits>

#include "twolayer/errors.hpp"
#include "twolayer/rate_models.hpp"

using namespace twolayer;

namespace {

ModelParams textbook() { return presets::linear(1.0, 0.5, 1.0, 2.0, 1.0, 2.0, 1.0); }

}  // namespace

TEST_CASE("linear rates evaluate as written") {
  CHECK(RateSpec::linear(1.0)(1.0) == doctest::Approx(1.0));
  const auto g = RateSpec::linear(1.0, 2.0);
  CHECK(g(2.0) == 0.0);
  CHECK(g.derivative(7.0) == 1.0);
  const auto h = RateSpec::linear(0.5);
  CHECK(h(1.0) == doctest::Approx(0.5));
  CHECK(RateSpec::zero().is_identically_zero());
  CHECK_FALSE(h.is_identically_zero());
  CHECK(h.scaled(4.0)(1.0) == doctest::Approx(2.0));
}

TEST_CASE("table rate interpolates and extends linearly") {
  const auto t = RateSpec::table({{0.0, 0.0}, {1.0, 2.0}, {3.0, 3.0}});
  CHECK(t(0.5) == doctest::Approx(1.0));
  CHECK(t(2.0) == doctest::Approx(2.5));
  CHECK(t(4.0) == doctest::Approx(3.5));
  CHECK(t(-1.0) == doctest::Approx(-2.0));
  CHECK(t.derivative(0.5) == doctest::Approx(2.0));
  CHECK(t.derivative(2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(RateSpec::table({{0.0, 0.0}}), InvalidParams);
  CHECK_THROWS_AS(RateSpec::table({{1.0, 0.0}, {1.0, 1.0}}), InvalidParams);
  CHECK(RateSpec::table({{0.0, 0.0}, {1.0, 0.0}}).is_identically_zero());
}

TEST_CASE("custom rate needs both evaluators") {
  CHECK_THROWS_AS(RateSpec::custom([](double s) { return s; }, nullptr), InvalidParams);
  const auto c = RateSpec::custom([](double s) { return s * s * s + s; }, [](double s) { return 3 * s * s + 1; });
  CHECK(c(2.0) == doctest::Approx(10.0));
  CHECK(c.derivative(2.0) == doctest::Approx(13.0));
}

TEST_CASE("preset satisfies every assumption") {
  const auto rep = validate_assumptions(textbook());
  CHECK(rep.passed);
  CHECK_FALSE(rep.necrotic_mode);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name);
  CHECK(validate_assumptions(presets::LinearPreset{}.make()).passed);
}

TEST_CASE("consumption above proliferation rate at sigmaQ is reported with witness") {
  auto p = textbook();
  p.h = RateSpec::linear(1.5);
  const auto rep = validate_assumptions(p);
  CHECK_FALSE(rep.passed);
  const auto* c = rep.find("f(sigmaQ) >= h(sigmaQ)");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  REQUIRE(c->witness);
  CHECK(*c->witness == doctest::Approx(1.0));
}

TEST_CASE("removal rate too small for g at sigmaQ") {
  const auto p = textbook().with_nu(0.5);
  const auto rep = validate_assumptions(p);
  CHECK_FALSE(rep.passed);
  const auto* c = rep.find("g(sigmaQ) + nu >= 0");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(*c->witness == doctest::Approx(1.0));
}

TEST_CASE("zero consumption is accepted as necrotic mode") {
  const auto rep = validate_assumptions(textbook().with_h(RateSpec::zero()));
  CHECK(rep.passed);
  CHECK(rep.necrotic_mode);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("decreasing rate and wrong ordering fail") {
  auto p = textbook();
  p.g = RateSpec::table({{0.0, 0.0}, {1.5, -1.0}, {2.0, 0.0}, {5.0, 3.0}});
  const auto rep = validate_assumptions(p);
  CHECK_FALSE(rep.passed);
  const auto* c = rep.find("g strictly increasing");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(c->witness);

  auto q = textbook();
  q.sigmaTilde = 0.5;
  q.g = RateSpec::linear(1.0, 0.5);
  CHECK_FALSE(validate_assumptions(q).find("0 <= sigma0 < sigmaQ < sigmaTilde")->passed);
}

TEST_CASE("custom derivative inconsistent with finite differences is caught") {
  auto p = textbook();
  p.f = RateSpec::custom([](double s) { return s; }, [](double) { return 3.0; });
  const auto rep = validate_assumptions(p);
  CHECK_FALSE(rep.passed);
  bool flagged = false;
  for (const auto& c : rep.checks) {
    if (!c.passed && c.witness && c.detail.find("finite differences") != std::string::npos) flagged = true;
  }
  CHECK(flagged);

  auto good = textbook();
  good.f = RateSpec::custom([](double s) { return std::sinh(s); }, [](double s) { return std::cosh(s); });
  CHECK(validate_assumptions(good).find("f strictly increasing")->passed);
}

TEST_CASE("non-finite rate values raise") {
  auto p = textbook();
  p.f = RateSpec::custom([](double s) { return s > 2.5 ? std::numeric_limits<double>::infinity() : s; },
                         [](double) { return 1.0; });
  CHECK_THROWS_AS(validate_assumptions(p), NonFiniteEvaluation);
  CHECK_THROWS_AS(validate_assumptions(textbook(), 1), InvalidParams);
}
