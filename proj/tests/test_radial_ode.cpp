#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "radlab/asymptotics.hpp"
#include "radlab/errors.hpp"
#include "radlab/num/rng.hpp"
#include "radlab/radial_ode.hpp"

using namespace radlab;

namespace {

ProblemSpec entire(int N, double a, double b, double p, double s) {
    return ProblemSpec::power(N, a, b, p, s, Domain::entire());
}

ProblemSpec ball(int N, double a, double b, double p, double s, double R) {
    return ProblemSpec::power(N, a, b, p, s, Domain::ball(R));
}

// Hermite interpolation of (u, v) at radius r from a solution grid; exact
// derivative columns make this fourth order.
std::pair<double, double> interp_uv(const RadialSolution& sol, double r) {
    const auto& g = sol.grid;
    auto it = std::lower_bound(g.begin(), g.end(), r,
                               [](const RadialState& s, double rr) { return s.r < rr; });
    if (it == g.begin()) ++it;
    if (it == g.end()) --it;
    const auto &p0 = *(it - 1), &p1 = *it;
    const double h = p1.r - p0.r;
    const double th = (r - p0.r) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th), h10 = th * (1 - th) * (1 - th),
                 h01 = th * th * (3 - 2 * th), h11 = th * th * (th - 1);
    return {h00 * p0.u + h * h10 * p0.du + h01 * p1.u + h * h11 * p1.du,
            h00 * p0.v + h * h10 * p0.dv + h01 * p1.v + h * h11 * p1.dv};
}

} // namespace

TEST_CASE("series start matches the leading-order expansion") {
    const InitialData init{1.0, 1.0};
    const double r0 = 1e-6;

    // du ~ v0^p r/(N+a) = r/3 and dv ~ r^3/((N+(a+1)s+b)(N+a)^s) = r^3/12
    const auto st = series_start(entire(3, 0, 0, 1.0, 1.0), init, r0);
    CHECK(st.du == doctest::Approx(r0 / 3.0).epsilon(1e-9));
    CHECK(st.dv == doctest::Approx(r0 * r0 * r0 / 12.0).epsilon(1e-9));
    CHECK(st.u > 1.0);
    CHECK(st.v >= 1.0); // the v increment ~ r^4/48 sits below double epsilon here

    CHECK_THROWS_AS(series_start(entire(3, 0, 0, 1, 1), init, -1.0), InputError);
}

TEST_CASE("series start agrees with the fixed-point oracle at the start radius") {
    const InitialData init{1.0, 1.0};
    const double r0 = 1e-6;
    const auto spec = entire(3, 0.5, 0.25, 1.5, 1.0);
    const auto st = series_start(spec, init, r0);
    const auto picard = picard_solve(spec, init, r0, 50, 2001);
    const auto& last = picard.grid.back();
    CHECK(st.du == doctest::Approx(last.du).epsilon(1e-8));
    CHECK(st.dv == doctest::Approx(last.dv).epsilon(1e-8));
    CHECK(st.u == doctest::Approx(last.u).epsilon(1e-10));
    CHECK(st.v == doctest::Approx(last.v).epsilon(1e-10));
}

TEST_CASE("ps = 1 runs exist globally; supercritical runs truncate with a report") {
    SolverConfig cfg;
    cfg.r_max = 1e3;

    const auto global = integrate_radial(entire(3, 0, 0, 1.0, 1.0), {1, 1}, cfg);
    CHECK(!global.blowup);
    CHECK(global.r_reached == doctest::Approx(1e3).epsilon(1e-6));

    const auto both = integrate_radial(entire(3, 0, 0, 1.0, 2.0), {1, 1}, cfg);
    REQUIRE(both.blowup.has_value());
    CHECK(both.blowup->u_blows);
    CHECK(both.blowup->v_blows);
    CHECK(both.blowup->R_est < 1e3);

    const auto vonly = integrate_radial(entire(3, 0, 0, 1.0, 5.0), {1, 1}, cfg);
    REQUIRE(vonly.blowup.has_value());
    CHECK(!vonly.blowup->u_blows);
    CHECK(vonly.blowup->v_blows);
}

TEST_CASE("degenerate center values are rejected") {
    CHECK_THROWS_AS(integrate_radial(entire(3, 0, 0, 1, 1), {1e-13, 1.0}), InputError);
    CHECK_THROWS_AS(integrate_radial(entire(3, 0, 0, 1, 1), {1.0, -1.0}), InputError);
}

TEST_CASE("monotonicity holds at every accepted step") {
    SolverConfig cfg;
    cfg.r_max = 50.0;
    num::SplitMix64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const double p = rng.uniform(0.3, 1.0);
        const double s = 1.0 + rng.uniform() * (1.0 / p - 1.0) * 0.9;
        const auto sol = integrate_radial(entire(3, rng.uniform(0, 1), rng.uniform(0, 1),
                                                 p, s),
                                          {rng.uniform(0.5, 2), rng.uniform(0.5, 2)}, cfg);
        for (std::size_t i = 1; i < sol.grid.size(); ++i) {
            const auto &a = sol.grid[i - 1], &b = sol.grid[i];
            CHECK(b.r > a.r);
            CHECK(b.u >= a.u * (1 - 1e-12));
            CHECK(b.v >= a.v * (1 - 1e-12));
            CHECK(b.du >= a.du * (1 - 1e-10) - 1e-300);
            CHECK(b.dv >= a.dv * (1 - 1e-10) - 1e-300);
        }
    }
}

TEST_CASE("zeroth fixed-point iterate is the constant pair") {
    const auto sol = picard_solve(entire(3, 0, 0, 1, 1), {2.0, 3.0}, 1.0, 0, 101);
    for (const auto& st : sol.grid) {
        CHECK(st.u == 2.0);
        CHECK(st.v == 3.0);
        CHECK(st.du == 0.0);
        CHECK(st.dv == 0.0);
    }
}

TEST_CASE("fixed-point sweeps contract geometrically on a short interval") {
    const auto spec = entire(3, 0, 0, 1.0, 1.0);
    std::vector<double> changes;
    for (int iters = 1; iters <= 8; ++iters)
        changes.push_back(picard_solve(spec, {1, 1}, 0.5, iters, 501).residual_norm);
    for (std::size_t i = 1; i < changes.size(); ++i)
        CHECK(changes[i] < 0.5 * changes[i - 1]);
}

TEST_CASE("adaptive solver and fixed-point oracle agree to 1e-6 on [0,1]") {
    const auto spec = entire(3, 0, 0, 1.0, 1.0);
    SolverConfig cfg;
    cfg.r_max = 1.0;
    const auto rk = integrate_radial(spec, {1, 1}, cfg);
    const auto pic = picard_solve(spec, {1, 1}, 1.0, 40, 2001);
    double worst = 0;
    for (const auto& st : pic.grid) {
        if (st.r < rk.grid.front().r) continue;
        const auto [u, v] = interp_uv(rk, st.r);
        worst = std::max({worst, std::abs(u - st.u), std::abs(v - st.v)});
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("divergent fixed-point iteration is reported") {
    // horizon far beyond the blow-up radius (~4.95 for p=1, s=2 from (1,1))
    CHECK_THROWS_AS(picard_solve(entire(3, 0, 0, 1.0, 2.0), {1, 1}, 20.0, 60, 2001),
                    NumericalError);
}

TEST_CASE("pole fit on synthetic data recovers the exact pole") {
    // v = (1-r)^-2, u bounded with integrable-divergent slope
    RadialSolution sol;
    for (int i = 0; i <= 4000; ++i) {
        const double r = 1e-3 + (1.0 - 1e-4 - 1e-3) * i / 4000.0;
        RadialState st;
        st.r = r;
        st.v = std::pow(1.0 - r, -2.0);
        st.dv = 2.0 * std::pow(1.0 - r, -3.0);
        st.u = 3.0 - 2.0 * std::sqrt(1.0 - r);
        st.du = std::pow(1.0 - r, -0.5);
        sol.grid.push_back(st);
    }
    sol.r_reached = sol.grid.back().r;
    const auto rep = detect_blowup(sol, 1e12);
    CHECK(rep.R_est == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.v_blows);
    CHECK(!rep.u_blows); // slope exponent 1/2 < 1: the tail integral converges
    CHECK(rep.kappa_v == doctest::Approx(2.0).epsilon(0.02));
    CHECK(rep.kappa_du == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("pole radius is stable under the analysis threshold") {
    SolverConfig cfg;
    cfg.r_max = 1e3;
    const auto sol = integrate_radial(entire(3, 0, 0, 1.0, 2.0), {1, 1}, cfg);
    REQUIRE(sol.blowup);
    const auto tight = detect_blowup(sol, 1e6);
    CHECK(std::abs(tight.R_est - sol.blowup->R_est) / sol.blowup->R_est < 0.01);
}

TEST_CASE("pole fit needs enough tail points") {
    RadialSolution sol;
    for (int i = 0; i < 8; ++i) {
        RadialState st;
        st.r = 0.1 * (i + 1);
        st.u = st.v = 1.0 + st.r;
        st.du = st.dv = 1.0;
        sol.grid.push_back(st);
    }
    CHECK_THROWS_AS(detect_blowup(sol, 10.0), NumericalError);
}

TEST_CASE("rescaling by 1 is the identity and by 2 scales the pole radius") {
    const auto spec = ball(3, 0, 0, 1.0, 2.0, 8.0); // pole near 7.26 sits inside
    SolverConfig cfg;
    const auto sol = integrate_radial(spec, {1, 1}, cfg);

    const auto [same, same_spec] = rescale_solution(sol, 1.0, spec);
    CHECK(same.grid.size() == sol.grid.size());
    CHECK(same.grid.back().r == doctest::Approx(sol.grid.back().r));
    CHECK(same_spec.g_scale == doctest::Approx(1.0));
    CHECK(same_spec.f_scale == doctest::Approx(1.0));

    const auto [scaled, scaled_spec] = rescale_solution(sol, 2.0, spec);
    REQUIRE(sol.blowup);
    REQUIRE(scaled.blowup);
    CHECK(scaled.blowup->R_est == doctest::Approx(2.0 * sol.blowup->R_est));
    CHECK(scaled_spec.g_scale == doctest::Approx(std::pow(2.0, -2.0)));
    CHECK(scaled_spec.f_scale == doctest::Approx(std::pow(2.0, 2.0 - 2.0)));

    // on a bounded run the mapped pair solves its transformed problem to
    // solver accuracy
    const auto bounded_spec = ball(3, 0.5, 0.25, 0.75, 1.5, 1.0);
    const auto bounded = integrate_radial(bounded_spec, {1, 1});
    const auto [mapped, mapped_spec] = rescale_solution(bounded, 2.0, bounded_spec);
    CHECK(mapped.residual_norm < 1e-6);
    CHECK(mapped_spec.domain.radius == doctest::Approx(2.0));
}

TEST_CASE("solver output has a small equation defect") {
    SolverConfig cfg;
    const auto sol = integrate_radial(ball(3, 0, 0, 1.0, 1.0, 1.0), {1, 1}, cfg);
    CHECK(residual(sol, ball(3, 0, 0, 1.0, 1.0, 1.0)) < 1e-4);
}

TEST_CASE("exact power pair has a tiny defect and perturbations raise it") {
    // exponents and coefficients from the interior-equilibrium closed forms
    const DynParams q{3, 0, 0, 0.5, 1.0};
    const auto pred = predicted_constants(q);
    const double beta = pred.v_exponent, alpha = pred.u_exponent;
    const double cv = pred.v_prefactor, cu = pred.u_prefactor_bd;

    const auto spec = entire(3, 0, 0, 0.5, 1.0);
    RadialSolution sol;
    for (int i = 0; i <= 20000; ++i) {
        const double r = std::exp(std::log(0.5) + (std::log(2.0) - std::log(0.5)) *
                                                      i / 20000.0);
        RadialState st;
        st.r = r;
        st.u = cu * std::pow(r, alpha);
        st.du = cu * alpha * std::pow(r, alpha - 1.0);
        st.v = cv * std::pow(r, beta);
        st.dv = cv * beta * std::pow(r, beta - 1.0);
        sol.grid.push_back(st);
    }
    CHECK(residual(sol, spec) < 1e-8);

    sol.grid[10000].u *= 1.01;
    CHECK(residual(sol, spec) > 1e-6);
}

TEST_CASE("defect computation needs at least five grid points") {
    RadialSolution sol;
    for (int i = 0; i < 4; ++i) sol.grid.push_back({0.1 * (i + 1), 1, 1, 0, 0});
    CHECK_THROWS_AS(residual(sol, entire(3, 0, 0, 1, 1)), InputError);
}

TEST_CASE("gradient and curvature sandwiches hold along ball runs") {
    num::SplitMix64 rng(99);
    for (int trial = 0; trial < 4; ++trial) {
        const double a = rng.uniform(0, 1), b = rng.uniform(0, 1);
        const double p = rng.uniform(0.5, 2.0), s = rng.uniform(1.0, 2.5);
        const double v0 = rng.uniform(0.5, 2.0);
        const auto spec = ball(3, a, b, p, s, 1.0);
        const auto sol = integrate_radial(spec, {rng.uniform(0.5, 2.0), v0});
        const double N = 3;

        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const auto& st = sol.grid[i];
            // gradient bounds: r^{a+1} v0^p/(N+a) <= u' <= r^{a+1} v^p/(N+a)
            const double lo = std::pow(st.r, a + 1.0) * std::pow(v0, p) / (N + a);
            const double hi = std::pow(st.r, a + 1.0) * std::pow(st.v, p) / (N + a);
            CHECK(st.du >= lo * (1 - 1e-7));
            CHECK(st.du <= hi * (1 + 1e-7));
        }

        // curvature bounds via centered differences of the derivative columns
        for (std::size_t i = 1; i + 1 < sol.grid.size(); ++i) {
            const auto &lo_st = sol.grid[i - 1], &st = sol.grid[i], &hi_st = sol.grid[i + 1];
            const double h1 = st.r - lo_st.r, h2 = hi_st.r - st.r;
            if (h1 + h2 > 0.25 * st.r) continue;
            if (lo_st.dv <= 0) continue;
            if (std::log(hi_st.du / lo_st.du) > 0.04 ||
                std::log(hi_st.dv / lo_st.dv) > 0.04)
                continue; // stencil does not resolve the tail
            auto d3 = [&](double ym, double y0, double yp) {
                return -h2 / (h1 * (h1 + h2)) * ym + (h2 - h1) / (h1 * h2) * y0 +
                       h1 / (h2 * (h1 + h2)) * yp;
            };
            const double upp = d3(lo_st.du, st.du, hi_st.du);
            const double vpp = d3(lo_st.dv, st.dv, hi_st.dv);
            const double gu = std::pow(st.r, a) * std::pow(st.v, p);
            const double fv = std::pow(st.r, b) * std::pow(st.du, s);
            CHECK(upp >= (1 + a) / (N + a) * gu * (1 - 1e-3) - 1e-12);
            CHECK(upp <= gu * (1 + 1e-3) + 1e-12);
            CHECK(vpp >= (1 + b) / (N + b) * fv * (1 - 1e-3) - 1e-300);
            CHECK(vpp <= fv * (1 + 1e-3) + 1e-300);
        }
    }
}

TEST_CASE("no pole is ever reported for ps <= 1 and always for ps > 1") {
    num::SplitMix64 rng(5150);
    SolverConfig cfg;
    cfg.r_max = 1e4;
    for (int trial = 0; trial < 6; ++trial) {
        const double p = rng.uniform(0.25, 1.0);
        const double s = 1.0 + rng.uniform() * (1.0 / p - 1.0);
        const auto sol = integrate_radial(entire(3, 0, 0, p, s), {1, 1}, cfg);
        CHECK(!sol.blowup);
    }
    // supercritical: poles for every positive center pair
    cfg.r_max = 1e3;
    for (const double u0 : {0.2, 1.0, 5.0})
        for (const double v0 : {0.2, 1.0, 5.0}) {
            const auto sol = integrate_radial(entire(3, 0, 0, 1.0, 2.0), {u0, v0}, cfg);
            REQUIRE(sol.blowup.has_value());
            CHECK(sol.blowup->R_est <= 1e3);
        }
}
