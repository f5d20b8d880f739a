// Command-line laboratory for positive radial solutions of the coupled
// elliptic system lap u = g(|x|, v), lap v = f(|x|, |grad u|): solving,
// blow-up classification, equilibrium/stability analysis of the associated
// autonomous flow, and long-range rate verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "radlab/cli.hpp"
#include "radlab/errors.hpp"
#include "radlab/io.hpp"

namespace {

struct ProblemFlags {
    int N = 3;
    double a = 0, b = 0, p = 1, s = 1;
    double ball = 0; // > 0 selects a ball of this radius
    bool entire = false;
    double u0 = 1, v0 = 1;
    std::string config_path;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
    cmd->add_option("--N", f.N, "space dimension (>= 2)");
    cmd->add_option("--a", f.a, "radial weight exponent on g");
    cmd->add_option("--b", f.b, "radial weight exponent on f");
    cmd->add_option("--p", f.p, "exponent on v");
    cmd->add_option("--s", f.s, "exponent on |grad u| (>= 1)");
    cmd->add_option("--ball", f.ball, "ball domain of this radius");
    cmd->add_flag("--entire", f.entire, "whole-space domain");
    cmd->add_option("--u0", f.u0, "center value of u");
    cmd->add_option("--v0", f.v0, "center value of v");
    cmd->add_option("--config", f.config_path,
                    "problem JSON file (alternative to the problem flags)");
}

void resolve_problem(const CLI::App* cmd, const ProblemFlags& f, radlab::RunConfig& cfg) {
    const bool flags_given =
        cmd->count("--N") || cmd->count("--a") || cmd->count("--b") || cmd->count("--p") ||
        cmd->count("--s") || cmd->count("--ball") || cmd->count("--entire") ||
        cmd->count("--u0") || cmd->count("--v0");
    if (!f.config_path.empty()) {
        if (flags_given)
            throw radlab::InputError("--config replaces the problem flags; pass one or "
                                     "the other");
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in) throw radlab::InputError("cannot read config file: " + f.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        auto [spec, init] = radlab::parse_problem_json(text.str());
        cfg.problem = spec;
        cfg.init = init;
        return;
    }
    if (f.entire && f.ball > 0)
        throw radlab::InputError("pass exactly one of --ball R and --entire");
    cfg.problem = radlab::ProblemSpec::power(
        f.N, f.a, f.b, f.p, f.s,
        f.entire ? radlab::Domain::entire() : radlab::Domain::ball(f.ball > 0 ? f.ball : 1.0));
    cfg.init = {f.u0, f.v0};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial elliptic system laboratory"};
    app.require_subcommand(1);

    radlab::RunConfig cfg;
    ProblemFlags pf[6];
    std::string format = "csv";

    auto add_common = [&](CLI::App* cmd, ProblemFlags& f) {
        add_problem_flags(cmd, f);
        cmd->add_option("--rtol", cfg.solver.rtol, "relative solver tolerance");
        cmd->add_option("--atol", cfg.solver.atol, "absolute solver tolerance");
        cmd->add_option("--rmax", cfg.solver.r_max, "whole-space integration horizon");
        cmd->add_option("--threshold", cfg.solver.blowup_threshold,
                        "blow-up truncation threshold");
        cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
        cmd->add_option("--format", format, "output format: csv or json");
        cmd->add_option("--seed", cfg.seed, "seed for randomized sweeps");
    };

    CLI::App* solve = app.add_subcommand("solve", "integrate the radial system");
    add_common(solve, pf[0]);

    CLI::App* classify = app.add_subcommand("classify", "blow-up regime classification");
    add_common(classify, pf[1]);
    classify->add_flag("--numeric", cfg.numeric_conditions,
                       "force the numeric condition route");

    CLI::App* equil = app.add_subcommand("equilibria", "flow equilibria and stability");
    add_common(equil, pf[2]);

    CLI::App* flow = app.add_subcommand("flow", "integrate the autonomous (Y,Z,W) flow");
    add_common(flow, pf[3]);
    flow->add_option("--y0", cfg.flow_start[0], "start Y");
    flow->add_option("--z0", cfg.flow_start[1], "start Z");
    flow->add_option("--w0", cfg.flow_start[2], "start W");
    flow->add_option("--t0", cfg.flow_t0, "start time");
    flow->add_option("--t1", cfg.flow_t1, "end time");
    flow->add_option("--dt", cfg.flow_dt, "output sampling step");

    CLI::App* verify = app.add_subcommand("verify", "fit and check long-range rates");
    add_common(verify, pf[4]);
    verify->add_option("--fit-rmax", cfg.verify_rmax, "rate-fit horizon");

    CLI::App* sweep = app.add_subcommand("sweep", "rate table over a parameter grid");
    add_common(sweep, pf[5]);
    sweep->add_option("--p-list", cfg.sweep_p, "comma-separated p values")->delimiter(',');
    sweep->add_option("--s-list", cfg.sweep_s, "comma-separated s values")->delimiter(',');
    sweep->add_option("--count", cfg.sweep_count, "sample this many random eligible pairs");
    sweep->add_option("--jobs", cfg.jobs, "worker threads");
    sweep->add_option("--fit-rmax", cfg.sweep_rmax, "rate-fit horizon");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            cfg.command = radlab::RunConfig::Command::Solve;
            resolve_problem(solve, pf[0], cfg);
        } else if (classify->parsed()) {
            cfg.command = radlab::RunConfig::Command::Classify;
            resolve_problem(classify, pf[1], cfg);
        } else if (equil->parsed()) {
            cfg.command = radlab::RunConfig::Command::Equilibria;
            resolve_problem(equil, pf[2], cfg);
        } else if (flow->parsed()) {
            cfg.command = radlab::RunConfig::Command::Flow;
            resolve_problem(flow, pf[3], cfg);
        } else if (verify->parsed()) {
            cfg.command = radlab::RunConfig::Command::Verify;
            resolve_problem(verify, pf[4], cfg);
            cfg.problem.domain = radlab::Domain::entire();
        } else if (sweep->parsed()) {
            cfg.command = radlab::RunConfig::Command::Sweep;
            resolve_problem(sweep, pf[5], cfg);
            cfg.problem.domain = radlab::Domain::entire();
        }
        if (format == "json")
            cfg.format = radlab::RunConfig::Format::Json;
        else if (format != "csv")
            throw radlab::InputError("--format must be csv or json");
    } catch (const radlab::Error& e) {
        std::cerr << radlab::error_json("input", e.what()) << '\n';
        return 2;
    }

    return radlab::run_command(cfg);
}
