#pragma once
// Machine-readable input/output: the problem JSON schema, CSV writers for
// solutions and trajectories, and JSON writers for every report type. All
// writers are deterministic (fixed field order via alphabetical keys, fixed
// float formatting), so identical runs produce byte-identical files.

#include <iosfwd>
#include <string>
#include <utility>

#include "radlab/asymptotics.hpp"
#include "radlab/criteria.hpp"
#include "radlab/dynsys.hpp"
#include "radlab/model.hpp"
#include "radlab/radial_ode.hpp"

namespace radlab {

inline constexpr int kSchemaVersion = 1;

/// Parses {"N", "a", "b", "p", "s", "domain": {"ball": R} | "entire",
/// "u0", "v0"}; a and b default to 0, u0 and v0 to 1. Unknown fields are
/// rejected.
std::pair<ProblemSpec, InitialData> parse_problem_json(const std::string& text);

std::string problem_json(const ProblemSpec& spec, const InitialData& init);

void write_solution_csv(std::ostream& os, const RadialSolution& sol);
void write_trajectory_csv(std::ostream& os, const DynTrajectory& traj);

std::string blowup_json(const BlowupReport& report);
std::string validation_json(const ValidationReport& report);
std::string regime_json(const Regime& regime);
std::string equilibria_json(const DynParams& params);
std::string asymptotics_json(const AsymptoticsReport& report);
std::string error_json(const std::string& kind, const std::string& message);

} // namespace radlab
