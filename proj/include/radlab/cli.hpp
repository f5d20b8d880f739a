#pragma once
// Command dispatch behind the command-line tool. Parsing lives in the tool;
// everything here is a plain function of a value-type config so runs are
// reproducible and testable.

#include <cstdint>
#include <string>
#include <vector>

#include "radlab/dynsys.hpp"
#include "radlab/model.hpp"
#include "radlab/radial_ode.hpp"

namespace radlab {

struct RunConfig {
    enum class Command { Solve, Classify, Equilibria, Flow, Verify, Sweep };
    enum class Format { Csv, Json };

    Command command = Command::Solve;
    ProblemSpec problem;
    InitialData init;
    SolverConfig solver;
    std::string out_path; ///< empty writes to stdout
    Format format = Format::Csv;
    std::uint64_t seed = 0;
    bool numeric_conditions = false; ///< classify: force the numeric condition route

    Triple flow_start{0.1, 3.0, 3.0};
    double flow_t0 = 0.0, flow_t1 = 50.0, flow_dt = 0.05;

    double verify_rmax = 1e5;
    double sweep_rmax = 1e4;
    std::vector<double> sweep_p, sweep_s; ///< explicit grid for sweep
    int sweep_count = 0;                  ///< >0 samples random eligible pairs instead
    int jobs = 1;
};

/// Exit code: 0 success, 2 input error, 3 inconclusive classification,
/// 4 numerical failure. Errors are also emitted as JSON on stderr.
int run_command(const RunConfig& config);

} // namespace radlab
