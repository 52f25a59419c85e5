#include "twolayer/rate_models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Index of the segment [points[i], points[i+1]] used for sigma; the end
// segments are reused for extrapolation.
std::size_t table_segment(const TableRate& t, double sigma) {
  const auto& p = t.points;
  auto it = std::upper_bound(p.begin(), p.end(), sigma,
                             [](double s, const auto& node) { return s < node.first; });
  std::size_t i = static_cast<std::size_t>(std::distance(p.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, p.size() - 2);
}

double table_slope(const TableRate& t, std::size_t i) {
  const auto& a = t.points[i];
  const auto& b = t.points[i + 1];
  return (b.second - a.second) / (b.first - a.first);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

RateSpec::RateSpec(TableRate r) : rep_(std::move(r)) {
  const auto& p = std::get<TableRate>(rep_).points;
  if (p.size() < 2) throw InvalidParams("table rate needs at least two points");
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!(p[i].first > p[i - 1].first))
      throw InvalidParams("table rate sigma nodes must be strictly increasing");
  }
}

RateSpec::RateSpec(CustomRate r) : rep_(std::move(r)) {
  const auto& c = std::get<CustomRate>(rep_);
  if (!c.value || !c.derivative)
    throw InvalidParams("custom rate requires both value and derivative evaluators");
}

double RateSpec::operator()(double sigma) const {
  return std::visit(
      overloaded{
          [&](const LinearRate& l) { return l.slope * (sigma - l.zero_at); },
          [&](const TableRate& t) {
            const std::size_t i = table_segment(t, sigma);
            const auto& a = t.points[i];
            return a.second + table_slope(t, i) * (sigma - a.first);
          },
          [&](const CustomRate& c) { return c.value(sigma); },
      },
      rep_);
}

double RateSpec::derivative(double sigma) const {
  return std::visit(overloaded{
                        [](const LinearRate& l) { return l.slope; },
                        [&](const TableRate& t) { return table_slope(t, table_segment(t, sigma)); },
                        [&](const CustomRate& c) { return c.derivative(sigma); },
                    },
                    rep_);
}

bool RateSpec::is_identically_zero() const {
  return std::visit(overloaded{
                        [](const LinearRate& l) { return l.slope == 0.0; },
                        [](const TableRate& t) {
                          return std::all_of(t.points.begin(), t.points.end(),
                                             [](const auto& n) { return n.second == 0.0; });
                        },
                        [](const CustomRate&) { return false; },
                    },
                    rep_);
}

RateSpec RateSpec::scaled(double factor) const {
  return std::visit(overloaded{
                        [&](const LinearRate& l) { return RateSpec::linear(factor * l.slope, l.zero_at); },
                        [&](const TableRate& t) {
                          TableRate s = t;
                          for (auto& n : s.points) n.second *= factor;
                          return RateSpec(std::move(s));
                        },
                        [&](const CustomRate& c) {
                          auto v = c.value;
                          auto d = c.derivative;
                          return RateSpec::custom([v, factor](double x) { return factor * v(x); },
                                                  [d, factor](double x) { return factor * d(x); });
                        },
                    },
                    rep_);
}

std::optional<LinearRate> RateSpec::as_linear() const {
  if (const auto* l = std::get_if<LinearRate>(&rep_)) return *l;
  return std::nullopt;
}

double eval_rate(const RateSpec& spec, double sigma) { return spec(sigma); }

const AssumptionCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

struct Sampled {
  std::vector<double> sigma;
  std::vector<double> value;
};

Sampled sample(const RateSpec& rate, const char* label, double lo, double hi, std::size_t n) {
  Sampled s;
  s.sigma.resize(n);
  s.value.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = rate(x);
    if (!std::isfinite(v)) {
      throw NonFiniteEvaluation(std::string("rate ") + label + " is not finite at sigma = " + fmt(x));
    }
    s.sigma[i] = x;
    s.value[i] = v;
  }
  return s;
}

// Strict increase on the sample grid; for custom rates also the supplied
// derivative against central differences (rel. tol 1e-4).
AssumptionCheck monotone_check(const RateSpec& rate, const Sampled& s, const char* label,
                               std::string clause) {
  AssumptionCheck c;
  c.name = std::string(label) + " strictly increasing";
  c.clause = std::move(clause);
  c.passed = true;
  for (std::size_t i = 0; i + 1 < s.value.size(); ++i) {
    if (!(s.value[i + 1] > s.value[i])) {
      c.passed = false;
      c.witness = s.sigma[i];
      c.detail = "not increasing between sigma = " + fmt(s.sigma[i]) + " and " + fmt(s.sigma[i + 1]);
      return c;
    }
  }
  if (rate.is_custom()) {
    const double span = s.sigma.back() - s.sigma.front();
    const double step = 1e-6 * span;
    for (double x : s.sigma) {
      const double d = rate.derivative(x);
      const double fd = (rate(x + step) - rate(x - step)) / (2.0 * step);
      if (!std::isfinite(d)) {
        throw NonFiniteEvaluation(std::string("derivative of ") + label + " is not finite at sigma = " +
                                  fmt(x));
      }
      if (std::abs(d - fd) > 1e-4 * std::max(std::abs(fd), 1e-8)) {
        c.passed = false;
        c.witness = x;
        c.detail = "derivative evaluator disagrees with finite differences (" + fmt(d) + " vs " +
                   fmt(fd) + ")";
        return c;
      }
    }
  }
  return c;
}

AssumptionCheck vanishes_at(const RateSpec& rate, const char* name, double at, double scale,
                            std::string clause) {
  AssumptionCheck c;
  c.name = name;
  c.clause = std::move(clause);
  const double v = rate(at);
  c.passed = std::abs(v) <= 1e-12 * std::max(1.0, scale);
  if (!c.passed) {
    c.witness = at;
    c.detail = "value " + fmt(v);
  }
  return c;
}

}  // namespace

ValidationReport validate_assumptions(const ModelParams& p, std::size_t n_samples) {
  if (n_samples < 2) throw InvalidParams("validate_assumptions needs n_samples >= 2");
  for (double x : {p.sigma0, p.sigmaQ, p.sigmaTilde, p.sigmaBar, p.nu}) {
    if (!std::isfinite(x)) throw NonFiniteEvaluation("model constant is not finite");
  }

  ValidationReport rep;
  const double top = std::max(p.sigmaBar, p.sigmaTilde);
  const double lo = p.sigma0;
  const double hi = top + std::max(top - p.sigma0, 1e-12);
  const Sampled fs = sample(p.f, "f", lo, hi, n_samples);
  const Sampled hs = sample(p.h, "h", lo, hi, n_samples);
  const Sampled gs = sample(p.g, "g", lo, hi, n_samples);
  const double fscale = std::abs(fs.value.back());

  rep.checks.push_back(monotone_check(p.f, fs, "f", "A1"));

  const bool h_zero = p.h.is_identically_zero() ||
                      std::all_of(hs.value.begin(), hs.value.end(), [](double v) { return v == 0.0; });
  if (h_zero) {
    AssumptionCheck c;
    c.name = "h strictly increasing";
    c.clause = "A1";
    c.passed = true;
    c.detail = "h vanishes identically (necrotic mode)";
    rep.checks.push_back(c);
    rep.necrotic_mode = true;
    rep.warnings.push_back("h is identically zero: necrotic-core model, monotonicity of h waived");
  } else {
    rep.checks.push_back(monotone_check(p.h, hs, "h", "A1"));
  }

  rep.checks.push_back(vanishes_at(p.f, "f(sigma0) = 0", p.sigma0, fscale, "A1"));
  rep.checks.push_back(vanishes_at(p.h, "h(sigma0) = 0", p.sigma0, fscale, "A1"));

  {
    AssumptionCheck c;
    c.name = "f(sigmaQ) >= h(sigmaQ)";
    c.clause = "A1";
    const double fq = p.f(p.sigmaQ);
    const double hq = p.h(p.sigmaQ);
    c.passed = fq >= hq;
    if (!c.passed) {
      c.witness = p.sigmaQ;
      c.detail = "f = " + fmt(fq) + ", h = " + fmt(hq);
    }
    rep.checks.push_back(c);
  }

  rep.checks.push_back(monotone_check(p.g, gs, "g", "A2"));
  rep.checks.push_back(
      vanishes_at(p.g, "g(sigmaTilde) = 0", p.sigmaTilde, std::abs(gs.value.back()), "A2"));

  {
    AssumptionCheck c;
    c.name = "0 <= sigma0 < sigmaQ < sigmaTilde";
    c.clause = "A3";
    c.passed = 0.0 <= p.sigma0 && p.sigma0 < p.sigmaQ && p.sigmaQ < p.sigmaTilde;
    if (!c.passed) {
      c.detail = "sigma0 = " + fmt(p.sigma0) + ", sigmaQ = " + fmt(p.sigmaQ) +
                 ", sigmaTilde = " + fmt(p.sigmaTilde);
      c.witness = p.sigma0 < 0.0 ? p.sigma0 : (p.sigma0 >= p.sigmaQ ? p.sigmaQ : p.sigmaTilde);
    }
    rep.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "g(sigmaQ) + nu >= 0";
    c.clause = "A3";
    const double v = p.g(p.sigmaQ) + p.nu;
    c.passed = v >= 0.0;
    if (!c.passed) {
      c.witness = p.sigmaQ;
      c.detail = "g(sigmaQ) + nu = " + fmt(v);
    }
    rep.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "sigmaBar > sigma0";
    c.clause = "supply";
    c.passed = p.sigmaBar > p.sigma0;
    if (!c.passed) c.witness = p.sigmaBar;
    rep.checks.push_back(c);
  }

  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const AssumptionCheck& c) { return c.passed; });
  return rep;
}

namespace presets {

ModelParams LinearPreset::make() const {
  return linear(1.0, lambda, mu, sigma_tilde, sigma_q, sigma_bar, nu);
}

ModelParams linear(double lambda1, double lambda2, double mu, double sigma_tilde,
                   double sigma_q, double sigma_bar, double nu) {
  ModelParams p;
  p.sigma0 = 0.0;
  p.sigmaQ = sigma_q;
  p.sigmaTilde = sigma_tilde;
  p.sigmaBar = sigma_bar;
  p.nu = nu;
  p.f = RateSpec::linear(lambda1, 0.0);
  p.h = RateSpec::linear(lambda2, 0.0);
  p.g = RateSpec::linear(mu, sigma_tilde);
  return p;
}

}  // namespace presets

}  // namespace twolayer
