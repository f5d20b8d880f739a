#include "radlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "radlab/asymptotics.hpp"
#include "radlab/criteria.hpp"
#include "radlab/errors.hpp"
#include "radlab/io.hpp"
#include "radlab/num/rng.hpp"

namespace radlab {

namespace {

using nlohmann::json;

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw InputError("cannot open output path: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

json grid_json(const RadialSolution& sol) {
    json rows = json::array();
    for (const auto& s : sol.grid) rows.push_back({s.r, s.u, s.v, s.du, s.dv});
    return rows;
}

int cmd_solve(const RunConfig& cfg) {
    const RadialSolution sol = integrate_radial(cfg.problem, cfg.init, cfg.solver);
    {
        Output out(cfg.out_path);
        if (cfg.format == RunConfig::Format::Csv)
            write_solution_csv(out.stream(), sol);
        else
            out.stream() << json{{"schema_version", kSchemaVersion},
                                 {"columns", {"r", "u", "v", "du", "dv"}},
                                 {"grid", grid_json(sol)}}
                                .dump()
                         << '\n';
    }
    if (sol.blowup && !cfg.out_path.empty()) {
        const std::string side = cfg.out_path + ".blowup.json";
        std::ofstream f(side, std::ios::binary | std::ios::trunc);
        f << blowup_json(*sol.blowup) << '\n';
    }
    json summary{{"schema_version", kSchemaVersion},
                 {"r_reached", sol.r_reached},
                 {"residual_norm", sol.residual_norm},
                 {"points", sol.grid.size()}};
    summary["blowup"] = sol.blowup ? json::parse(blowup_json(*sol.blowup)) : json();
    if (!cfg.out_path.empty()) std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    KoOptions opts;
    opts.force_numeric = cfg.numeric_conditions;
    const Regime regime = cfg.problem.domain.is_ball() ? classify_ball(cfg.problem, opts)
                                                       : classify_entire(cfg.problem);
    Output out(cfg.out_path);
    out.stream() << regime_json(regime) << '\n';
    return regime.decided ? 0 : 3;
}

int cmd_equilibria(const RunConfig& cfg) {
    Output out(cfg.out_path);
    out.stream() << equilibria_json(DynParams::from_spec(cfg.problem)) << '\n';
    return 0;
}

int cmd_flow(const RunConfig& cfg) {
    FlowOptions opts;
    opts.sample_dt = cfg.flow_dt;
    const DynTrajectory traj = flow(DynParams::from_spec(cfg.problem), cfg.flow_start,
                                    {cfg.flow_t0, cfg.flow_t1}, opts);
    Output out(cfg.out_path);
    if (cfg.format == RunConfig::Format::Json) {
        json rows = json::array();
        for (std::size_t i = 0; i < traj.size(); ++i)
            rows.push_back({traj.t[i], traj.Y[i], traj.Z[i], traj.W[i]});
        out.stream() << json{{"schema_version", kSchemaVersion},
                             {"columns", {"t", "Y", "Z", "W"}},
                             {"trajectory", rows}}
                            .dump()
                     << '\n';
    } else {
        write_trajectory_csv(out.stream(), traj);
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    VerifyConfig vcfg;
    vcfg.r_max = cfg.verify_rmax;
    vcfg.rtol = cfg.solver.rtol;
    vcfg.atol = cfg.solver.atol;
    const AsymptoticsReport rep = verify_asymptotics(cfg.problem, cfg.init, vcfg);
    Output out(cfg.out_path);
    out.stream() << asymptotics_json(rep) << '\n';
    return 0;
}

struct SweepRow {
    double p = 0, s = 0;
    bool eligible = false;
    AsymptoticsReport rep;
    std::string failure;
};

int cmd_sweep(const RunConfig& cfg) {
    std::vector<std::pair<double, double>> cells;
    if (cfg.sweep_count > 0) {
        num::SplitMix64 rng(cfg.seed);
        while (cells.size() < static_cast<std::size_t>(cfg.sweep_count)) {
            const double p = rng.uniform(0.1, 0.95);
            const double s = 1.0 + rng.uniform() * (1.0 / p - 1.0) * 0.95;
            if (divergence_bound_holds(cfg.problem.N, cfg.problem.a, cfg.problem.b, p, s))
                cells.emplace_back(p, s);
        }
    } else {
        if (cfg.sweep_p.empty() || cfg.sweep_s.empty())
            throw InputError("sweep needs --p-list and --s-list, or --count with --seed");
        for (double p : cfg.sweep_p)
            for (double s : cfg.sweep_s) cells.emplace_back(p, s);
    }

    std::vector<SweepRow> rows(cells.size());
    const int jobs = std::max(1, cfg.jobs);
    auto work = [&](std::size_t begin) {
        for (std::size_t i = begin; i < cells.size(); i += static_cast<std::size_t>(jobs)) {
            SweepRow& row = rows[i];
            row.p = cells[i].first;
            row.s = cells[i].second;
            ProblemSpec spec = cfg.problem;
            spec.h.reset();
            spec.g_general.reset();
            spec.f_general.reset();
            spec.p = row.p;
            spec.s = row.s;
            spec.domain = Domain::entire();
            const auto v = validate_problem(spec);
            row.eligible = v.ok && v.asymptotics_eligible &&
                           divergence_bound_holds(spec.N, spec.a, spec.b, row.p, row.s);
            if (!row.eligible) continue;
            try {
                VerifyConfig vcfg;
                vcfg.r_max = cfg.sweep_rmax;
                vcfg.rtol = cfg.solver.rtol;
                vcfg.atol = cfg.solver.atol;
                row.rep = verify_asymptotics(spec, cfg.init, vcfg);
            } catch (const Error& e) {
                row.eligible = false;
                row.failure = e.what();
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
        for (auto& th : pool) th.join();
    }

    Output out(cfg.out_path);
    auto& os = out.stream();
    os << "p,s,eligible,predicted_v_exponent,fitted_v_exponent,rel_err_v_exponent,"
          "predicted_u_exponent,fitted_u_exponent,rel_err_u_exponent,"
          "predicted_v_prefactor,fitted_v_prefactor,rel_err_v_prefactor,u_winner\n";
    char buf[512];
    for (const auto& row : rows) {
        if (!row.eligible) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,0,,,,,,,,,,\n", row.p, row.s);
            os << buf;
            continue;
        }
        const auto& r = row.rep;
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,1,%.17g,%.17g,%.6e,%.17g,%.17g,%.6e,%.17g,%.17g,%.6e,%s\n",
                      row.p, row.s, r.predicted.v_exponent, r.v.exponent,
                      r.rel_err_v_exponent, r.predicted.u_exponent, r.u.exponent,
                      r.rel_err_u_exponent, r.predicted.v_prefactor, r.v.prefactor,
                      r.rel_err_v_prefactor, r.u_prefactor_winner.c_str());
        os << buf;
    }
    return 0;
}

} // namespace

int run_command(const RunConfig& cfg) {
    try {
        const auto report = validate_problem(cfg.problem);
        if (!report.ok) {
            std::cerr << validation_json(report) << '\n';
            return 2;
        }
        switch (cfg.command) {
        case RunConfig::Command::Solve: return cmd_solve(cfg);
        case RunConfig::Command::Classify: return cmd_classify(cfg);
        case RunConfig::Command::Equilibria: return cmd_equilibria(cfg);
        case RunConfig::Command::Flow: return cmd_flow(cfg);
        case RunConfig::Command::Verify: return cmd_verify(cfg);
        case RunConfig::Command::Sweep: return cmd_sweep(cfg);
        }
        return 2;
    } catch (const InputError& e) {
        std::cerr << error_json("input", e.what()) << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << error_json("numerical", e.what()) << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what()) << '\n';
        return 4;
    }
}

} // namespace radlab
