#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace twolayer {

/// slope * (sigma - zero_at)
struct LinearRate {
  double slope = 0.0;
  double zero_at = 0.0;
};

/// Piecewise-linear interpolation through (sigma, value) nodes, extended
/// linearly past both ends. Nodes must have strictly increasing sigma.
struct TableRate {
  std::vector<std::pair<double, double>> points;
};

struct CustomRate {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// One of the model's rate functions: f, h (consumption) or g (proliferation).
/// Immutable once constructed.
class RateSpec {
 public:
  using Rep = std::variant<LinearRate, TableRate, CustomRate>;

  RateSpec() : rep_(LinearRate{}) {}
  explicit RateSpec(LinearRate r) : rep_(r) {}
  explicit RateSpec(TableRate r);
  explicit RateSpec(CustomRate r);

  static RateSpec linear(double slope, double zero_at = 0.0) {
    return RateSpec(LinearRate{slope, zero_at});
  }
  static RateSpec zero() { return RateSpec(LinearRate{0.0, 0.0}); }
  static RateSpec table(std::vector<std::pair<double, double>> points) {
    return RateSpec(TableRate{std::move(points)});
  }
  static RateSpec custom(std::function<double(double)> value,
                         std::function<double(double)> derivative) {
    return RateSpec(CustomRate{std::move(value), std::move(derivative)});
  }

  double operator()(double sigma) const;
  double derivative(double sigma) const;

  /// True when the rate is structurally zero (zero-slope linear or an
  /// all-zero table). Custom rates are never reported as zero here.
  bool is_identically_zero() const;

  /// factor * this
  RateSpec scaled(double factor) const;

  const Rep& rep() const { return rep_; }
  std::optional<LinearRate> as_linear() const;
  bool is_custom() const { return std::holds_alternative<CustomRate>(rep_); }
  bool is_table() const { return std::holds_alternative<TableRate>(rep_); }

 private:
  Rep rep_;
};

double eval_rate(const RateSpec& spec, double sigma);

/// Scalar constants and rate functions of the two-layer model.
struct ModelParams {
  double sigma0 = 0.0;      // consumption vanishes here
  double sigmaQ = 1.0;      // quiescence threshold
  double sigmaTilde = 2.0;  // zero of g
  double sigmaBar = 2.0;    // boundary supply
  double nu = 1.0;          // quiescent-cell removal rate
  RateSpec f;
  RateSpec h;
  RateSpec g;

  ModelParams with_sigma_bar(double value) const {
    ModelParams p = *this;
    p.sigmaBar = value;
    return p;
  }
  ModelParams with_h(RateSpec rate) const {
    ModelParams p = *this;
    p.h = std::move(rate);
    return p;
  }
  ModelParams with_nu(double value) const {
    ModelParams p = *this;
    p.nu = value;
    return p;
  }
};

struct AssumptionCheck {
  std::string name;
  std::string clause;  // "A1", "A2", "A3" or "supply"
  bool passed = false;
  std::optional<double> witness;  // violating sigma, when one exists
  std::string detail;
};

struct ValidationReport {
  std::vector<AssumptionCheck> checks;
  bool passed = false;
  /// h vanishes identically: the necrotic-core model. Accepted, not failed.
  bool necrotic_mode = false;
  std::vector<std::string> warnings;

  const AssumptionCheck* find(std::string_view name) const;
};

/// Checks the rate and ordering assumptions and sigmaBar > sigma0. Monotonicity is sampled on a
/// uniform grid of n_samples points over [sigma0, top + (top - sigma0)],
/// top = max(sigmaBar, sigmaTilde). Throws NonFiniteEvaluation when a rate
/// returns inf/nan on that grid.
ValidationReport validate_assumptions(const ModelParams& params,
                                      std::size_t n_samples = 1000);

namespace presets {

/// f = sigma, h = lambda*sigma, g = mu*(sigma - sigmaTilde), sigma0 = 0.
struct LinearPreset {
  double lambda = 0.5;
  double mu = 1.0;
  double sigma_tilde = 1.5;
  double sigma_bar = 1.95;
  double nu = 1.0;
  double sigma_q = 1.0;

  ModelParams make() const;
};

/// f = lambda1*sigma, h = lambda2*sigma, g = mu*(sigma - sigmaTilde).
ModelParams linear(double lambda1, double lambda2, double mu,
                   double sigma_tilde, double sigma_q, double sigma_bar,
                   double nu);

}  // namespace presets

}  // namespace twolayer
