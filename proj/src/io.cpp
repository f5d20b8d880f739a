#include "radlab/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "radlab/errors.hpp"

namespace radlab {

namespace {

using nlohmann::json;

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw InputError(std::string("problem JSON needs a numeric field \"") + key + "\"");
    return j[key].get<double>();
}

json certificates_json(const Regime& regime) {
    json arr = json::array();
    for (const auto& c : regime.certificates)
        arr.push_back({{"condition", c.condition},
                       {"verdict", to_string(c.verdict)},
                       {"margin", c.margin}});
    return arr;
}

} // namespace

std::pair<ProblemSpec, InitialData> parse_problem_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("problem JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) throw InputError("problem JSON must be an object");
    static const char* known[] = {"N", "a", "b", "p", "s", "domain", "u0", "v0"};
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InputError("unknown field \"" + key + "\" in problem JSON");
    }

    ProblemSpec spec;
    const double N = require_number(j, "N");
    if (N != static_cast<int>(N)) throw InputError("dimension N must be an integer");
    spec.N = static_cast<int>(N);
    spec.a = j.contains("a") ? require_number(j, "a") : 0.0;
    spec.b = j.contains("b") ? require_number(j, "b") : 0.0;
    spec.p = require_number(j, "p");
    spec.s = require_number(j, "s");

    if (!j.contains("domain")) throw InputError("problem JSON needs a \"domain\" field");
    const json& dom = j["domain"];
    if (dom.is_string() && dom.get<std::string>() == "entire") {
        spec.domain = Domain::entire();
    } else if (dom.is_object() && dom.contains("ball") && dom["ball"].is_number() &&
               dom.size() == 1) {
        spec.domain = Domain::ball(dom["ball"].get<double>());
    } else {
        throw InputError("domain must be {\"ball\": R} or \"entire\"");
    }

    InitialData init;
    init.u0 = j.contains("u0") ? require_number(j, "u0") : 1.0;
    init.v0 = j.contains("v0") ? require_number(j, "v0") : 1.0;
    return {spec, init};
}

std::string problem_json(const ProblemSpec& spec, const InitialData& init) {
    json j{{"N", spec.N}, {"a", spec.a}, {"b", spec.b}, {"p", spec.p}};
    if (spec.s) j["s"] = *spec.s;
    j["domain"] = spec.domain.is_ball() ? json{{"ball", spec.domain.radius}} : json("entire");
    j["u0"] = init.u0;
    j["v0"] = init.v0;
    return j.dump();
}

void write_solution_csv(std::ostream& os, const RadialSolution& sol) {
    os << "r,u,v,du,dv\n";
    for (const auto& s : sol.grid)
        os << num17(s.r) << ',' << num17(s.u) << ',' << num17(s.v) << ',' << num17(s.du)
           << ',' << num17(s.dv) << '\n';
}

void write_trajectory_csv(std::ostream& os, const DynTrajectory& traj) {
    os << "t,Y,Z,W\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        os << num17(traj.t[i]) << ',' << num17(traj.Y[i]) << ',' << num17(traj.Z[i]) << ','
           << num17(traj.W[i]) << '\n';
}

std::string blowup_json(const BlowupReport& r) {
    return json{{"schema_version", kSchemaVersion},
                {"R_est", r.R_est},
                {"u_blows", r.u_blows},
                {"v_blows", r.v_blows}}
        .dump();
}

std::string validation_json(const ValidationReport& r) {
    json v = json::array();
    for (const auto& viol : r.violations)
        v.push_back({{"code", viol.code}, {"message", viol.message}});
    return json{{"schema_version", kSchemaVersion},
                {"ok", r.ok},
                {"violations", v},
                {"warnings", r.warnings},
                {"ball_conditions_ready", r.ball_conditions_ready},
                {"entire_existence_ready", r.entire_existence_ready},
                {"asymptotics_eligible", r.asymptotics_eligible}}
        .dump();
}

std::string regime_json(const Regime& regime) {
    return json{{"schema_version", kSchemaVersion},
                {"regime", regime.decided ? to_string(regime.tag) : "Inconclusive"},
                {"decided", regime.decided},
                {"certificates", certificates_json(regime)}}
        .dump();
}

std::string equilibria_json(const DynParams& q) {
    const auto [boundary, interior] = equilibria(q);
    const auto stab = is_asymptotically_stable(q);
    const auto hirsch = check_hirsch_conditions(q);
    json eig = json::array();
    for (const auto& ev : stab.eigenvalues)
        eig.push_back({{"re", ev.real()}, {"im", ev.imag()}});
    auto point = [](const Triple& t) {
        return json{{"Y", t[0]}, {"Z", t[1]}, {"W", t[2]}};
    };
    return json{
        {"schema_version", kSchemaVersion},
        {"params",
         {{"N", q.N}, {"a", q.a}, {"b", q.b}, {"p", q.p}, {"s", q.s}}},
        {"boundary", point(boundary.point)},
        {"interior", point(interior.point)},
        {"stability",
         {{"alpha", stab.alpha},
          {"beta", stab.beta},
          {"gamma", stab.gamma},
          {"routh_margin", stab.routh_margin},
          {"stable", stab.stable},
          {"eigenvalues", eig}}},
        {"conditions",
         {{"cooperative", hirsch.cooperative},
          {"divergence_max_corner", hirsch.divergence_max_corner},
          {"divergence_negative", hirsch.divergence_negative},
          {"rate_bound_holds", hirsch.rate_bound_holds},
          {"rate_bound_lhs", hirsch.rate_bound_lhs},
          {"rate_bound_rhs", hirsch.rate_bound_rhs},
          {"warnings", hirsch.warnings}}}}
        .dump();
}

std::string asymptotics_json(const AsymptoticsReport& r) {
    return json{
        {"schema_version", kSchemaVersion},
        {"predicted",
         {{"A", r.predicted.A},
          {"B", r.predicted.B},
          {"K", r.predicted.K},
          {"D", r.predicted.D},
          {"v_exponent", r.predicted.v_exponent},
          {"u_exponent", r.predicted.u_exponent},
          {"u_exponent_alt", r.predicted.u_exponent_alt},
          {"u_exponent_gap", r.predicted.u_exponent_gap},
          {"v_prefactor", r.predicted.v_prefactor},
          {"u_prefactor_bd", r.predicted.u_prefactor_bd},
          {"u_prefactor_kd", r.predicted.u_prefactor_kd}}},
        {"fitted",
         {{"v_exponent", r.v.exponent},
          {"v_prefactor", r.v.prefactor},
          {"u_exponent", r.u.exponent},
          {"u_prefactor", r.u.prefactor},
          {"v_exponent_se", r.v.exponent_se},
          {"u_exponent_se", r.u.exponent_se},
          {"u_log_prefactor_se", r.u.log_prefactor_se},
          {"v_local_slope_end", r.v.local_slope_end}}},
        {"relative_errors",
         {{"v_exponent", r.rel_err_v_exponent},
          {"u_exponent", r.rel_err_u_exponent},
          {"v_prefactor", r.rel_err_v_prefactor}}},
        {"u_prefactor_winner", r.u_prefactor_winner},
        {"u_prefactor_margin_sigma", r.u_prefactor_margin_sigma},
        {"prefactor_identity_err", r.prefactor_identity_err},
        {"fit_window", {r.fit_window.first, r.fit_window.second}}}
        .dump();
}

std::string error_json(const std::string& kind, const std::string& message) {
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"error", kind},
                          {"message", message}}
        .dump();
}

} // namespace radlab
