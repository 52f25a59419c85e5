#include "twolayer/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "twolayer/errors.hpp"

namespace twolayer {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw InvalidParams(std::string(where) + ": missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw InvalidParams(std::string(where) + ": key '" + key + "' must be a number");
  return v.get<double>();
}

template <class T>
void override_field(const json& s, const char* key, T& field) {
  if (!s.contains(key)) return;
  const json& v = s.at(key);
  if (!v.is_number()) throw InvalidConfig(std::string("solver.") + key + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    const double d = v.get<double>();
    if (d < 0.0 || d != std::floor(d)) throw InvalidConfig(std::string("solver.") + key + " must be a non-negative integer");
    field = static_cast<T>(d);
  } else {
    field = v.get<T>();
  }
}

void write_value(const json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_value(v, out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

RateSpec rate_from_json(const json& j, const char* name) {
  const std::string where = std::string("rate ") + name;
  if (!j.is_object()) throw InvalidParams(where + " must be an object");
  const std::string kind = j.value("kind", std::string{});
  if (kind == "linear") {
    return RateSpec::linear(number(j, "slope", where.c_str()), j.contains("zero_at") ? number(j, "zero_at", where.c_str()) : 0.0);
  }
  if (kind == "table") {
    if (!j.contains("points") || !j.at("points").is_array()) throw InvalidParams(where + ": table needs 'points'");
    std::vector<std::pair<double, double>> pts;
    for (const auto& node : j.at("points")) {
      if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
        throw InvalidParams(where + ": each point must be [sigma, value]");
      }
      pts.emplace_back(node[0].get<double>(), node[1].get<double>());
    }
    return RateSpec::table(std::move(pts));
  }
  throw InvalidParams(where + ": unknown kind '" + kind + "'");
}

LoadedConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw InvalidParams("configuration must be a JSON object");
  LoadedConfig c;
  auto& p = c.params;
  p.sigma0 = number(doc, "sigma0", "config");
  p.sigmaQ = number(doc, "sigmaQ", "config");
  p.sigmaTilde = number(doc, "sigmaTilde", "config");
  p.sigmaBar = number(doc, "sigmaBar", "config");
  p.nu = number(doc, "nu", "config");
  for (const char* k : {"f", "h", "g"}) {
    if (!doc.contains(k)) throw InvalidParams(std::string("config: missing rate '") + k + "'");
  }
  p.f = rate_from_json(doc.at("f"), "f");
  p.h = rate_from_json(doc.at("h"), "h");
  p.g = rate_from_json(doc.at("g"), "g");

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    if (!s.is_object()) throw InvalidConfig("'solver' must be an object");
    auto& cfg = c.solver;
    override_field(s, "ode_tol", cfg.ode_tol);
    override_field(s, "bvp_tol", cfg.bvp_tol);
    override_field(s, "event_tol", cfg.event_tol);
    override_field(s, "root_tol", cfg.root_tol);
    override_field(s, "conv_tol", cfg.conv_tol);
    override_field(s, "origin_cutoff", cfg.origin_cutoff);
    override_field(s, "r_max", cfg.r_max);
    override_field(s, "R_cap", cfg.R_cap);
    override_field(s, "sigma_cap", cfg.sigma_cap);
    override_field(s, "max_iter", cfg.max_iter);
    override_field(s, "min_grid_points", cfg.min_grid_points);
    override_field(s, "evolve_tol", cfg.evolve_tol);
    override_field(s, "max_steps", cfg.max_steps);
  }
  c.solver.validate();
  return c;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open configuration file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw InvalidParams("configuration file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RateSpec& r) {
  if (const auto l = r.as_linear()) return {{"kind", "linear"}, {"slope", l->slope}, {"zero_at", l->zero_at}};
  if (const auto* t = std::get_if<TableRate>(&r.rep())) {
    json pts = json::array();
    for (const auto& [s, v] : t->points) pts.push_back({s, v});
    return {{"kind", "table"}, {"points", pts}};
  }
  return {{"kind", "custom"}};
}

json to_json(const ModelParams& p) {
  return {{"sigma0", p.sigma0}, {"sigmaQ", p.sigmaQ}, {"sigmaTilde", p.sigmaTilde},
          {"sigmaBar", p.sigmaBar}, {"nu", p.nu}, {"f", to_json(p.f)},
          {"h", to_json(p.h)}, {"g", to_json(p.g)}};
}

json to_json(const SolverConfig& c) {
  return {{"ode_tol", c.ode_tol},
          {"bvp_tol", c.bvp_tol},
          {"event_tol", c.event_tol},
          {"root_tol", c.root_tol},
          {"conv_tol", c.conv_tol},
          {"origin_cutoff", c.origin_cutoff},
          {"r_max", c.r_max},
          {"R_cap", c.R_cap},
          {"sigma_cap", c.sigma_cap},
          {"max_iter", c.max_iter},
          {"min_grid_points", c.min_grid_points},
          {"evolve_tol", c.evolve_tol},
          {"max_steps", c.max_steps}};
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"clause", c.clause},
                      {"passed", c.passed},
                      {"witness", optional_number(c.witness)},
                      {"detail", c.detail}});
  }
  return {{"passed", r.passed}, {"necrotic_mode", r.necrotic_mode}, {"warnings", r.warnings}, {"checks", checks}};
}

json to_json(const StationaryResult& r) {
  return {{"regime", std::string(regime_name(r.regime))},
          {"R_s", r.R_s},
          {"rho_s", optional_number(r.rho_s)},
          {"eta_s", optional_number(r.eta_s)},
          {"R_c", r.R_c},
          {"F_residual", r.F_residual}};
}

json to_json(const EstimateReport& r) {
  return {{"kind", r.kind},
          {"parameter", r.parameter},
          {"hypothesis_holds", r.hypothesis_holds},
          {"hypothesis_integral", r.hypothesis_integral},
          {"hypothesis_tolerance", r.hypothesis_tolerance},
          {"nu_condition_holds", r.nu_condition_holds},
          {"nu_threshold", r.nu_threshold},
          {"eta_bound", r.eta_bound},
          {"R_lower", r.R_lower},
          {"R_upper", r.R_upper},
          {"R_s", r.R_s},
          {"eta_s", r.eta_s},
          {"eta_ok", r.eta_ok},
          {"lower_ok", r.lower_ok},
          {"upper_ok", r.upper_ok},
          {"satisfied", r.satisfied},
          {"notes", r.notes}};
}

json to_json(const Transition& t) {
  return {{"t", t.t}, {"from", std::string(regime_name(t.from))}, {"to", std::string(regime_name(t.to))}};
}

json to_json(const LimitSweep& s) {
  return {{"lambda", s.lambda_values}, {"R_s", s.R_s_values},   {"rho_s", s.rho_s_values},
          {"gap_R", s.gap_R},          {"gap_rho", s.gap_rho},  {"R_nec", s.R_nec},
          {"rho_nec", s.rho_nec},      {"R_increasing", s.R_increasing},
          {"below_R_nec", s.below_R_nec}, {"rho_approaching", s.rho_approaching}};
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  // keep a decimal marker so the value reads back as floating point
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  write_value(j, out, indent, 0);
  return out;
}

void write_profile_csv(const NutrientProfile& prof, std::ostream& os) {
  os << "r,sigma,regime\n";
  const auto tag = regime_name(prof.regime);
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    os << format_double(prof.grid[i]) << ',' << format_double(prof.values[i]) << ',' << tag << '\n';
  }
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
  os << "t,R,rho,regime\n";
  for (const auto& s : tr.samples) {
    os << format_double(s.t) << ',' << format_double(s.R) << ',' << (s.rho ? format_double(*s.rho) : "")
       << ',' << regime_name(s.regime) << '\n';
  }
}

void write_sweep_csv(const LimitSweep& sw, std::ostream& os) {
  os << "lambda,R_s,rho_s,gap_R,gap_rho\n";
  for (std::size_t i = 0; i < sw.lambda_values.size(); ++i) {
    os << format_double(sw.lambda_values[i]) << ',' << format_double(sw.R_s_values[i]) << ','
       << format_double(sw.rho_s_values[i]) << ',' << format_double(sw.gap_R[i]) << ','
       << format_double(sw.gap_rho[i]) << '\n';
  }
}

}  // namespace twolayer
