#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/evolution.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/io.hpp"
#include "twolayer/linear_oracle.hpp"
#include "twolayer/necrotic_limit.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/stationary.hpp"

namespace twolayer::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::string out_dir;
  bool json_on = true;
  bool csv_on = true;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Common common;
  LoadedConfig loaded;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::istringstream num(item);
    num.imbue(std::locale::classic());
    double x = 0.0;
    num >> x;
    if (!num || !(num >> std::ws).eof()) throw InvalidParams("cannot parse '" + item + "' as a number");
    v.push_back(x);
  }
  return v;
}

void emit(Context& ctx, json doc) {
  doc["solver"] = to_json(ctx.loaded.solver);
  if (ctx.common.json_on) ctx.out << dump_json(doc) << '\n';
}

std::optional<std::filesystem::path> artifact(Context& ctx, const char* name) {
  if (!ctx.common.csv_on || ctx.common.out_dir.empty()) return std::nullopt;
  std::filesystem::create_directories(ctx.common.out_dir);
  return std::filesystem::path(ctx.common.out_dir) / name;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os.imbue(std::locale::classic());
  body(os);
}

// Validation gate for solver commands; returns false after printing the report.
bool validated(Context& ctx, const char* command) {
  const ValidationReport rep = validate_assumptions(ctx.loaded.params);
  for (const auto& w : rep.warnings) ctx.err << "warning: " << w << '\n';
  if (rep.passed) return true;
  emit(ctx, {{"command", command}, {"validation", to_json(rep)}});
  ctx.err << "error: model assumptions are violated\n";
  return false;
}

int cmd_validate(Context& ctx) {
  const ValidationReport rep = validate_assumptions(ctx.loaded.params);
  for (const auto& w : rep.warnings) ctx.err << "warning: " << w << '\n';
  emit(ctx, {{"command", "validate"}, {"params", to_json(ctx.loaded.params)}, {"validation", to_json(rep)}});
  return rep.passed ? kOk : kValidation;
}

int cmd_stationary(Context& ctx) {
  if (!validated(ctx, "stationary")) return kValidation;
  const auto& p = ctx.loaded.params;
  const StationaryResult st = find_stationary(p, ctx.loaded.solver);
  json doc{{"command", "stationary"}, {"params", to_json(p)}, {"result", to_json(st)}};
  if (st.profile) {
    if (auto path = artifact(ctx, "profile.csv")) {
      write_file(*path, [&](std::ostream& os) { write_profile_csv(*st.profile, os); });
      doc["profile_csv"] = path->string();
    }
  }
  emit(ctx, std::move(doc));
  return kOk;
}

int cmd_evolve(Context& ctx, double R0, double t_end) {
  if (!validated(ctx, "evolve")) return kValidation;
  const auto& p = ctx.loaded.params;
  if (!(t_end > 0.0)) t_end = default_t_end(p);
  const Trajectory tr = evolve(p, R0, t_end, ctx.loaded.solver);
  json transitions = json::array();
  for (const auto& t : tr.transition_times) transitions.push_back(to_json(t));
  json doc{{"command", "evolve"},
           {"params", to_json(p)},
           {"R0", R0},
           {"t_end", t_end},
           {"final_t", tr.samples.back().t},
           {"final_R", tr.samples.back().R},
           {"samples", tr.samples.size()},
           {"R_c", tr.R_c},
           {"R_s", tr.R_s ? json(*tr.R_s) : json(nullptr)},
           {"converged_to", tr.converged_to ? json(*tr.converged_to) : json(nullptr)},
           {"transitions", transitions}};
  if (auto path = artifact(ctx, "trajectory.csv")) {
    write_file(*path, [&](std::ostream& os) { write_trajectory_csv(tr, os); });
    doc["trajectory_csv"] = path->string();
    const auto side = std::filesystem::path(ctx.common.out_dir) / "transitions.json";
    write_file(side, [&](std::ostream& os) { os << dump_json(json{{"transitions", transitions}}) << '\n'; });
    doc["transitions_json"] = side.string();
  }
  emit(ctx, std::move(doc));
  return kOk;
}

int cmd_threshold(Context& ctx) {
  if (!validated(ctx, "threshold")) return kValidation;
  const auto& p = ctx.loaded.params;
  const auto& cfg = ctx.loaded.solver;
  const double s_star = sigma_star(p, cfg);
  const double s_g = sigma_bar_g(p, cfg);
  emit(ctx, {{"command", "threshold"},
             {"params", to_json(p)},
             {"sigma_star", s_star},
             {"sigma_bar_g", s_g},
             {"R_c_at_sigma_star", critical_radius(p.with_sigma_bar(s_star), cfg)},
             {"sigma_star_exceeds_sigma_bar_g", s_star > s_g}});
  return kOk;
}

int cmd_sweep(Context& ctx, const std::string& lambda_list) {
  if (!validated(ctx, "sweep")) return kValidation;
  const auto& p = ctx.loaded.params;
  const std::vector<double> lambdas = parse_list(lambda_list);
  const LimitSweep sw = limit_sweep(p, lambdas, ctx.loaded.solver);
  json doc{{"command", "sweep"}, {"params", to_json(p)}, {"sweep", to_json(sw)}};
  if (auto path = artifact(ctx, "sweep.csv")) {
    write_file(*path, [&](std::ostream& os) { write_sweep_csv(sw, os); });
    doc["sweep_csv"] = path->string();
  }
  emit(ctx, std::move(doc));
  return kOk;
}

struct Row {
  std::string name;
  double error;
  double tolerance;
};

int cmd_oracle_check(Context& ctx) {
  const auto& p = ctx.loaded.params;
  const auto& cfg = ctx.loaded.solver;
  const LinearOracle o(p);
  std::vector<Row> rows;
  for (double rho : {0.25, 0.5, 1.0, 2.0}) {
    const InnerSolution in = solve_inner(p, rho, cfg);
    double err = 0.0;
    for (std::size_t i = 0; i < in.grid.size(); ++i) {
      err = std::max(err, std::abs(in.values[i] - o.inner(in.grid[i], rho)));
    }
    rows.push_back({"V(r, " + format_double(rho) + ")", err, 1e-6});
    rows.push_back({"Phi(" + format_double(rho) + ")", std::abs(in.phi - o.phi(rho)), 1e-8});
  }
  if (p.sigmaBar > p.sigmaQ) {
    const double R_c = critical_radius(p, cfg);
    rows.push_back({"R_c", std::abs(R_c - o.critical_radius()), 1e-8});
    for (double rho : {0.5, 1.0}) {
      rows.push_back({"R(" + format_double(rho) + ")", std::abs(shot_radius(p, rho, cfg) - o.shot_radius(rho)), 1e-8});
    }
    const double R_two = 1.5 * R_c;
    rows.push_back({"rho(1.5 R_c)", std::abs(rho_of_R(p, R_two, R_c, cfg) - o.rho_of_R(R_two)), 1e-6});
    for (double k : {0.5, 1.2, 2.0}) {
      const double R = k * R_c;
      rows.push_back({"F(" + format_double(k) + " R_c)",
                      std::abs(growth_functional(p, R, R_c, cfg) - o.F(R)), 1e-6});
    }
    if (p.sigmaBar > p.sigmaTilde) {
      const StationaryResult st = find_stationary(p, cfg);
      rows.push_back({"R_s", std::abs(st.R_s - o.stationary_radius()), 1e-5});
      if (st.rho_s) rows.push_back({"rho_s", std::abs(*st.rho_s - o.stationary_rho()), 1e-5});
    }
  }

  bool all = true;
  json table = json::array();
  for (const auto& r : rows) {
    const bool ok = r.error <= r.tolerance;
    all = all && ok;
    table.push_back({{"quantity", r.name}, {"error", r.error}, {"tolerance", r.tolerance}, {"passed", ok}});
    ctx.err << (ok ? "PASS " : "FAIL ") << r.name << "  error " << format_double(r.error) << " <= "
            << format_double(r.tolerance) << '\n';
  }
  emit(ctx, {{"command", "oracle-check"}, {"params", to_json(p)}, {"checks", table}, {"passed", all}});
  return all ? kOk : kValidation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-layer tumour free-boundary solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "twolayer 0.1.0");

  Common common;
  double R0 = 1.0;
  double t_end = 0.0;
  std::string lambda_list = "1,0.5,0.1,0.01,0.001,0.0001";

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config, "parameter file (JSON)");
    if (config_required) opt->required();
    sub->add_option("--out", common.out_dir, "directory for CSV artifacts");
    sub->add_flag("--json,!--no-json", common.json_on, "print the JSON summary (default on)");
    sub->add_flag("--csv,!--no-csv", common.csv_on, "write CSV artifacts when --out is given (default on)");
  };

  auto* validate = app.add_subcommand("validate", "check the model assumptions");
  add_common(validate, true);
  auto* stationary = app.add_subcommand("stationary", "stationary radius, core radius and profile");
  add_common(stationary, true);
  auto* evolve_cmd = app.add_subcommand("evolve", "integrate dR/dt = R F(R)");
  add_common(evolve_cmd, true);
  evolve_cmd->add_option("--R0", R0, "initial radius")->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--t-end", t_end, "final time (default 30 / max(nu/3, |g(sigmaBar)|/3))");
  auto* threshold = app.add_subcommand("threshold", "sigma* and sigma_bar_g");
  add_common(threshold, true);
  auto* sweep = app.add_subcommand("sweep", "stationary radii as h -> 0");
  add_common(sweep, true);
  sweep->add_option("--lambda-list", lambda_list, "comma-separated decreasing h scale factors");
  auto* oracle = app.add_subcommand("oracle-check", "compare against the linear closed forms");
  add_common(oracle, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{out, err, common, {}};
  try {
    if (common.config.empty()) {
      ctx.loaded.params = presets::LinearPreset{}.make();
    } else {
      ctx.loaded = load_config(common.config);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (validate->parsed()) return cmd_validate(ctx);
    if (stationary->parsed()) return cmd_stationary(ctx);
    if (evolve_cmd->parsed()) return cmd_evolve(ctx, R0, t_end);
    if (threshold->parsed()) return cmd_threshold(ctx);
    if (sweep->parsed()) return cmd_sweep(ctx, lambda_list);
    if (oracle->parsed()) return cmd_oracle_check(ctx);
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const PresetMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InadmissibleK& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}

}  // namespace twolayer::cli
