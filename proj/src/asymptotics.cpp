#include "radlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "radlab/errors.hpp"
#include "radlab/num/linfit.hpp"

namespace radlab {

AsymptoticPrediction predicted_constants(const DynParams& q) {
    const double ps = q.p * q.s;
    if (!(ps < 1.0)) throw InputError("rate predictions require ps < 1");
    const auto [boundary, interior] = equilibria(q);
    (void)boundary;

    AsymptoticPrediction out;
    out.A = interior.point[0];
    out.B = interior.point[1];
    out.K = interior.point[2];
    out.D = 2.0 + q.a + q.p * out.A;
    out.v_exponent = out.A;
    out.u_exponent = out.D;
    const double core = std::pow(out.A * std::pow(out.B, q.s) * out.K, 1.0 / (ps - 1.0));
    out.v_prefactor = core;
    const double core_p = std::pow(core, q.p);
    out.u_prefactor_bd = core_p / (out.B * out.D);
    out.u_prefactor_kd = core_p / (out.D * out.K);
    out.u_exponent_alt =
        ((q.a + 2.0) * (1.0 - ps) + ps * (q.a + 1.0) + q.b * q.p) / (1.0 - ps);
    out.u_exponent_gap = 2.0 * q.p / (1.0 - ps);
    return out;
}

ComponentRates fit_rate(const RadialSolution& sol, std::pair<double, double> window) {
    const auto& g = sol.grid;
    if (g.size() < 8) throw InputError("rate fit needs a denser grid");
    const double lo = window.first, hi = window.second;
    if (!(lo > 0) || !(hi / lo >= 100.0 * (1.0 - 1e-12)))
        throw InputError("fit window must span at least two decades");
    if (lo < g.front().r || hi > g.back().r * (1.0 + 1e-12))
        throw InputError("fit window must lie inside the solution grid");

    // resample uniformly in ln r to undo the adaptive clustering of grid
    // points, interpolating ln u and ln v linearly in ln r
    constexpr std::size_t kSamples = 200;
    std::vector<double> lr(kSamples), lu(kSamples), lv(kSamples);
    std::size_t j = 1;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const double t =
            std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                               static_cast<double>(kSamples - 1);
        const double r = std::exp(t);
        while (j + 1 < g.size() && g[j].r < r) ++j;
        const auto &p0 = g[j - 1], &p1 = g[j];
        const double w = (std::log(r) - std::log(p0.r)) /
                         (std::log(p1.r) - std::log(p0.r));
        lr[i] = t;
        lu[i] = (1.0 - w) * std::log(p0.u) + w * std::log(p1.u);
        lv[i] = (1.0 - w) * std::log(p0.v) + w * std::log(p1.v);
    }

    auto pack = [&](const std::vector<double>& ly, bool u_side) {
        const auto f = num::fit_line(lr, ly);
        RateFit out;
        out.exponent = f.slope;
        out.prefactor = std::exp(f.intercept);
        out.exponent_se = f.slope_se;
        out.log_prefactor_se = f.intercept_se;
        // running local slope at the window end, straight off the grid
        std::size_t k = g.size() - 1;
        while (k > 0 && g[k].r > hi) --k;
        out.local_slope_end =
            u_side ? g[k].r * g[k].du / g[k].u : g[k].r * g[k].dv / g[k].v;
        return out;
    };
    return {pack(lu, true), pack(lv, false)};
}

AsymptoticsReport verify_asymptotics(const ProblemSpec& spec, const InitialData& init,
                                     const VerifyConfig& cfg) {
    const auto rep = validate_problem(spec);
    if (!rep.ok) throw InputError("invalid problem: " + rep.violations.front().message);
    if (spec.domain.is_ball() || !spec.power_law())
        throw InputError("rate verification runs on the whole space in power-law form");
    const DynParams q = DynParams::from_spec(spec);
    const double ps = q.p * q.s;
    if (!(q.p < 1.0) || !(ps < 1.0) ||
        !divergence_bound_holds(q.N, q.a, q.b, q.p, q.s))
        throw InputError("parameters are not eligible for the rate limits "
                         "(need p < 1, ps < 1 and the divergence bound)");

    SolverConfig scfg;
    scfg.rtol = cfg.rtol;
    scfg.atol = cfg.atol;
    scfg.r_max = cfg.r_max;
    const RadialSolution sol = integrate_radial(spec, init, scfg);
    if (sol.blowup)
        throw NumericalError("unexpected blow-up inside an eligible rate-limit run");
    if (sol.grid.back().r < cfg.r_max * (1.0 - 1e-9))
        throw NumericalError("rate-limit run outgrew the value range before r_max; "
                             "lower r_max");

    AsymptoticsReport out;
    out.predicted = predicted_constants(q);
    out.fit_window = {cfg.r_max / cfg.window_fraction, cfg.r_max};
    const auto rates = fit_rate(sol, out.fit_window);
    out.u = rates.u;
    out.v = rates.v;

    out.rel_err_v_exponent =
        std::abs(out.v.exponent - out.predicted.v_exponent) / out.predicted.v_exponent;
    out.rel_err_u_exponent =
        std::abs(out.u.exponent - out.predicted.u_exponent) / out.predicted.u_exponent;
    out.rel_err_v_prefactor =
        std::abs(out.v.prefactor - out.predicted.v_prefactor) / out.predicted.v_prefactor;

    const double lc = std::log(out.u.prefactor);
    const double d_bd = std::abs(lc - std::log(out.predicted.u_prefactor_bd));
    const double d_kd = std::abs(lc - std::log(out.predicted.u_prefactor_kd));
    out.u_prefactor_winner = d_bd <= d_kd ? "bd" : "kd";
    const double se = std::max(out.u.log_prefactor_se, 1e-12);
    out.u_prefactor_margin_sigma = std::max(d_bd, d_kd) / se;

    out.prefactor_identity_err =
        std::abs(std::pow(out.v.prefactor, ps - 1.0) /
                     (out.predicted.A * std::pow(out.predicted.B, q.s) * out.predicted.K) -
                 1.0);
    return out;
}

} // namespace radlab
