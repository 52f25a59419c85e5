#pragma once

// Parameter files (JSON), result serialisation and CSV export.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "twolayer/evolution.hpp"
#include "twolayer/necrotic_limit.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/rate_models.hpp"
#include "twolayer/solver_config.hpp"
#include "twolayer/stationary.hpp"

namespace twolayer {

struct LoadedConfig {
  ModelParams params;
  SolverConfig solver;
};

/// Keys sigma0, sigmaQ, sigmaTilde, sigmaBar, nu, f, h, g; rates are
/// {"kind": "linear", "slope", "zero_at"} or {"kind": "table", "points": [[s, v], ...]}.
/// An optional "solver" object overrides SolverConfig fields by name.
LoadedConfig parse_config(const nlohmann::json& doc);
LoadedConfig load_config(const std::string& path);

RateSpec rate_from_json(const nlohmann::json& j, const char* name);

nlohmann::json to_json(const RateSpec& r);
nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const StationaryResult& r);
nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const Transition& t);
nlohmann::json to_json(const LimitSweep& s);

/// 17 significant digits, '.' separator regardless of locale.
std::string format_double(double x);

/// Serialises with every number through format_double; non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

void write_profile_csv(const NutrientProfile& prof, std::ostream& os);
void write_trajectory_csv(const Trajectory& tr, std::ostream& os);
void write_sweep_csv(const LimitSweep& sw, std::ostream& os);

}  // namespace twolayer
