#include "radlab/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "radlab/errors.hpp"
#include "radlab/num/fdweights.hpp"
#include "radlab/num/linfit.hpp"
#include "radlab/num/ode45.hpp"
#include "radlab/num/quadrature.hpp"

namespace radlab {

namespace {

using num::StateVec;

// u' integrability margin: the tail integral of u' diverges when the fitted
// pole exponent of u' is >= 1; the margin absorbs fit noise at the exact
// boundary where the exponent equals 1.
constexpr double kIntegrableRateMargin = 0.07;
constexpr double kMinPoleExponent = 0.05;
constexpr double kValueStorageCap = 1e290;
constexpr double kResidualValueCap = 1e30;

void check_init(const InitialData& init) {
    if (!(init.u0 > 0) || !(init.v0 > 0))
        throw InputError("center values u0, v0 must be positive");
    if (init.u0 < 1e-12 || init.v0 < 1e-12)
        throw InputError("degenerate center values below 1e-12 are rejected");
}

void check_spec(const ProblemSpec& spec) {
    const auto rep = validate_problem(spec);
    if (!rep.ok) throw InputError("invalid problem: " + rep.violations.front().message);
}

// Fits a power-type pole C (R - r)^(-kappa) to tail samples of the local
// slope Y = r q'/q of the diverging component q: there r/Y = (R - r)/kappa
// is linear in r, so a straight-line fit gives both R and kappa.
struct PoleFit {
    bool valid = false;
    double R_est = 0.0;
    double kappa = 0.0;
};

PoleFit fit_pole(const std::vector<double>& r, const std::vector<double>& slope_y) {
    PoleFit out;
    std::vector<double> x, y;
    x.reserve(r.size());
    y.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (slope_y[i] > 0) {
            x.push_back(r[i]);
            y.push_back(r[i] / slope_y[i]);
        }
    }
    if (x.size() < 10) return out;
    const auto fit = num::fit_line(x, y);
    if (!(fit.slope < 0)) return out;
    out.kappa = -1.0 / fit.slope;
    out.R_est = -fit.intercept / fit.slope;
    out.valid = std::isfinite(out.R_est) && std::isfinite(out.kappa);
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

struct MonotoneGuard {
    double u = 0, v = 0, du = 0, dv = 0;
    bool first = true;

    void admit(const RadialState& s) {
        auto ok = [](double prev, double cur) {
            return cur >= prev - 1e-12 * std::max(std::abs(prev), 1.0) - 1e-300;
        };
        if (!first && !(ok(u, s.u) && ok(v, s.v) && ok(du, s.du) && ok(dv, s.dv)))
            throw NumericalError("monotonicity of u, v, u', v' lost at an accepted step "
                                 "(stiffness failure)");
        if (!(s.u > 0) || !(s.v > 0) || s.du < 0 || s.dv < 0)
            throw NumericalError("positivity lost at an accepted step (stiffness failure)");
        u = s.u;
        v = s.v;
        du = s.du;
        dv = s.dv;
        first = false;
    }
};

// Trailing log-slope records for whole-space pole hunting.
struct SlopeMonitor {
    std::vector<double> t, slope_v, ratio_du_v, sigma;

    void add(double ti, double y, double ratio) {
        if (!t.empty() && y > 0 && slope_v.back() > 0)
            sigma.push_back(std::log(y / slope_v.back()) / (ti - t.back()));
        t.push_back(ti);
        slope_v.push_back(y);
        ratio_du_v.push_back(ratio);
    }
    double sigma_med(std::size_t k = 7) const {
        if (sigma.size() < k) return 0.0;
        return median({sigma.end() - static_cast<long>(k), sigma.end()});
    }
    double last_slope() const { return slope_v.empty() ? 0.0 : slope_v.back(); }
};

BlowupReport report_from_tail(const std::vector<double>& r, const std::vector<double>& y_v,
                              const std::vector<double>& ratio, double min_grid_radius) {
    const PoleFit pf = fit_pole(r, y_v);
    if (!pf.valid) throw NumericalError("pole fit failed on the truncated tail");
    BlowupReport rep;
    rep.R_est = pf.R_est;
    rep.kappa_v = pf.kappa;
    const std::size_t k = std::min<std::size_t>(7, ratio.size());
    rep.kappa_du = pf.kappa * median({ratio.end() - static_cast<long>(k), ratio.end()});
    rep.u_blows = rep.kappa_du >= 1.0 - kIntegrableRateMargin;
    rep.v_blows = rep.kappa_v > kMinPoleExponent;
    rep.extrapolation_order = 1;
    if (!rep.u_blows && !rep.v_blows)
        throw NumericalError("truncated run has no diverging component");
    if (rep.R_est < min_grid_radius) {
        if (rep.R_est > min_grid_radius * (1.0 - 2e-3))
            rep.R_est = min_grid_radius;
        else
            throw NumericalError("pole fit landed inside the integrated range");
    }
    return rep;
}

} // namespace

RadialState series_start(const ProblemSpec& spec, const InitialData& init, double r_start) {
    if (!(r_start > 0)) throw InputError("series start radius must be positive");
    check_spec(spec);
    check_init(init);
    const ProblemFns fns(spec);
    const double N = spec.N;
    RadialState st;
    st.r = r_start;

    if (spec.mode() != ProblemSpec::Mode::General) {
        // u'(r) = g_scale v0^p r^{a+1}/(N+a) to leading order; freezing v at
        // v0 makes the inner integral exact.
        const double a = spec.a, b = spec.b;
        const double cw = spec.g_scale * std::pow(init.v0, spec.p) / (N + a);
        st.du = cw * std::pow(r_start, a + 1.0);
        st.u = init.u0 + cw * std::pow(r_start, a + 2.0) / (a + 2.0);
        if (spec.power_law()) {
            const double s = *spec.s;
            const double k = (a + 1.0) * s + b; // r-power of f(r, u'(r)) near 0
            const double cv = spec.f_scale * std::pow(cw, s) / (N + k);
            st.dv = cv * std::pow(r_start, k + 1.0);
            st.v = init.v0 + cv * std::pow(r_start, k + 2.0) / (k + 2.0);
        } else {
            // gradient descriptor: quadrature of the frozen representation
            auto dv_at = [&](double r) {
                auto integrand = [&](double t) {
                    return std::pow(t, N - 1.0) * fns.f(t, cw * std::pow(t, a + 1.0));
                };
                return std::pow(r, 1.0 - N) *
                       num::integrate_adaptive(integrand, 0.0, r, 1e-12, 1e-320);
            };
            st.dv = dv_at(r_start);
            const double half = dv_at(0.5 * r_start);
            // advance v with the local power of v': v ~ v0 + dv * r/(k+1)
            double k = (half > 0 && st.dv > 0) ? std::log2(st.dv / half) : 1.0;
            k = std::max(k, 0.0);
            st.v = init.v0 + st.dv * r_start / (k + 1.0);
        }
    } else {
        auto du_at = [&](double r) {
            auto integrand = [&](double t) { return std::pow(t, N - 1.0) * fns.g(t, init.v0); };
            return std::pow(r, 1.0 - N) *
                   num::integrate_adaptive(integrand, 0.0, r, 1e-12, 1e-320);
        };
        st.du = du_at(r_start);
        const double du_half = du_at(0.5 * r_start);
        double ku = (du_half > 0 && st.du > 0) ? std::log2(st.du / du_half) : 1.0;
        ku = std::max(ku, 0.0);
        st.u = init.u0 + st.du * r_start / (ku + 1.0);

        auto dv_at = [&](double r) {
            auto integrand = [&](double t) {
                const double w = st.du * std::pow(t / r_start, ku);
                return std::pow(t, N - 1.0) * fns.f(t, w);
            };
            return std::pow(r, 1.0 - N) *
                   num::integrate_adaptive(integrand, 0.0, r, 1e-12, 1e-320);
        };
        st.dv = dv_at(r_start);
        const double dv_half = dv_at(0.5 * r_start);
        double kv = (dv_half > 0 && st.dv > 0) ? std::log2(st.dv / dv_half) : 1.0;
        kv = std::max(kv, 0.0);
        st.v = init.v0 + st.dv * r_start / (kv + 1.0);
    }
    return st;
}

RadialSolution integrate_radial(const ProblemSpec& spec, const InitialData& init,
                                const SolverConfig& cfg) {
    check_spec(spec);
    check_init(init);
    const ProblemFns fns(spec);
    const bool ball = spec.domain.is_ball();
    const double R_end = ball ? spec.domain.radius : cfg.r_max;
    double r_start = cfg.r_start_factor * std::max(1.0, ball ? spec.domain.radius : 1.0);
    r_start = std::min(r_start, R_end / 1e3);
    if (!(R_end > 10.0 * r_start)) throw InputError("integration range is too short");

    const double Nm1 = spec.N - 1.0;
    RadialSolution sol;
    MonotoneGuard guard;
    RadialState st0 = series_start(spec, init, r_start);
    guard.admit(st0);
    sol.grid.push_back(st0);

    bool crossed = false;

    // --- plain-value phase, parametrized by t = ln r ----------------------
    // Log-radius keeps the relative grid spacing uniform, which both renders
    // the origin layer smooth and keeps finite-difference defect checks
    // meaningful at small radii.
    const double rA_end = ball ? R_end : std::min(cfg.log_switch_radius, R_end);
    {
        auto rhs = [&](double t, const StateVec<4>& y) {
            const double r = std::exp(t);
            StateVec<4> d;
            d[0] = r * y[2];
            d[1] = r * y[3];
            d[2] = r * fns.g(r, y[1]) - Nm1 * y[2];
            d[3] = r * fns.f(r, y[2]) - Nm1 * y[3];
            return d;
        };
        num::StepControl ctl;
        ctl.rtol = cfg.rtol;
        ctl.atol = cfg.atol;
        const double t0 = std::log(r_start), t1 = std::log(rA_end);
        ctl.max_step = (t1 - t0) / std::max(cfg.min_grid, 8);
        auto observe = [&](const num::StepRecord<4>& rec) {
            RadialState s{std::exp(rec.t1), rec.y1[0], rec.y1[1], rec.y1[2], rec.y1[3]};
            guard.admit(s);
            sol.grid.push_back(s);
            if (std::max(s.u, s.v) >= cfg.blowup_threshold) {
                crossed = true;
                return num::StepAction::Stop;
            }
            return num::StepAction::Continue;
        };
        StateVec<4> y0{st0.u, st0.v, st0.du, st0.dv};
        const auto status = integrate_ode<4>(rhs, t0, t1, y0, ctl, observe);
        if (status.step_underflow)
            throw NumericalError("step size underflow during radial integration "
                                 "(stiffness failure)");
        if (status.budget_exhausted)
            throw NumericalError("step budget exhausted during radial integration");
    }
    sol.r_reached = sol.grid.back().r;

    if (ball) {
        if (crossed) sol.blowup = detect_blowup(sol, cfg.blowup_threshold);
        if (sol.grid.size() >= 5) sol.residual_norm = residual(sol, spec);
        return sol;
    }

    // --- whole space: continue in fully logarithmic variables ------------
    // State (ln u, ln v, ln u', ln v') against t = ln r. This reaches large
    // radii cheaply and survives growth beyond the floating-point range.
    if (sol.r_reached < R_end) {
        if (!spec.power_law())
            throw InputError("whole-space integration past the log-switch radius "
                             "requires power-law nonlinearities");
        const double a = spec.a, b = spec.b, p = spec.p, s = *spec.s;
        const double lgs = std::log(spec.g_scale), lfs = std::log(spec.f_scale);
        auto rhs = [&](double t, const StateVec<4>& L) {
            StateVec<4> d;
            d[0] = std::exp(t + L[2] - L[0]);
            d[1] = std::exp(t + L[3] - L[1]);
            d[2] = std::exp(lgs + (1.0 + a) * t + p * L[1] - L[2]) - Nm1;
            d[3] = std::exp(lfs + (1.0 + b) * t + s * L[2] - L[3]) - Nm1;
            return d;
        };

        const RadialState& c = sol.grid.back();
        StateVec<4> L{std::log(c.u), std::log(c.v), std::log(c.du), std::log(c.dv)};
        const double t0 = std::log(c.r), t1 = std::log(R_end);

        num::StepControl ctl;
        ctl.rtol = cfg.rtol;
        ctl.atol = cfg.atol;
        ctl.max_step = (t1 - t0) / std::max(cfg.min_grid, 8);

        SlopeMonitor mon;
        bool pole_candidate = false, pole_confirmed = false;
        double log_guard = 0;
        auto observe = [&](const num::StepRecord<4>& rec) {
            // monotone in log space too
            for (int i = 0; i < 4; ++i)
                if (rec.y1[i] < rec.y0[i] - 1e-10)
                    throw NumericalError("monotonicity lost in the log-variable phase");
            if (*std::max_element(rec.y1.begin(), rec.y1.end()) <
                std::log(kValueStorageCap)) {
                RadialState st{std::exp(rec.t1), std::exp(rec.y1[0]), std::exp(rec.y1[1]),
                               std::exp(rec.y1[2]), std::exp(rec.y1[3])};
                guard.admit(st);
                sol.grid.push_back(st);
            }
            const double y = rec.f1[1];
            const double ratio = (rec.f1[1] > 0) ? rec.f1[2] / rec.f1[1] : 0.0;
            mon.add(rec.t1, y, ratio);
            log_guard = rec.y1[1];
            // A finite-radius pole makes the local slope grow without bound:
            // d(ln Y)/d(ln r) -> infinity, while any global solution keeps it
            // near the power (0), exponential (1), or weighted-exponential
            // (1 + O(a,b)) level.
            if (!pole_candidate && y > 1e4 && mon.sigma_med() > 6.0) pole_candidate = true;
            if (pole_candidate && y > 1e8 && mon.sigma_med() > 6.0) {
                pole_confirmed = true;
                return num::StepAction::Stop;
            }
            return num::StepAction::Continue;
        };
        const auto status = integrate_ode<4>(rhs, t0, t1, L, ctl, observe);
        sol.r_reached = std::exp(status.t_final);
        (void)log_guard;

        if (status.step_underflow) {
            if (mon.last_slope() > 1e4 && mon.sigma_med() > 2.0)
                pole_confirmed = true;
            else
                throw NumericalError("step size underflow during whole-space integration "
                                     "(stiffness failure)");
        }
        if (status.budget_exhausted)
            throw NumericalError("step budget exhausted during whole-space integration");

        if (pole_confirmed) {
            // keep the trailing decade and a half of slope growth
            const double y_end = mon.last_slope();
            std::vector<double> rs, ys, ratios;
            for (std::size_t i = 0; i < mon.t.size(); ++i) {
                if (mon.slope_v[i] >= y_end * std::pow(10.0, -1.5) && mon.slope_v[i] > 0) {
                    rs.push_back(std::exp(mon.t[i]));
                    ys.push_back(mon.slope_v[i]);
                    ratios.push_back(mon.ratio_du_v[i]);
                }
            }
            sol.blowup = report_from_tail(rs, ys, ratios, sol.grid.back().r);
        }
    }

    if (sol.grid.size() >= 5) sol.residual_norm = residual(sol, spec);
    return sol;
}

RadialSolution picard_solve(const ProblemSpec& spec, const InitialData& init, double r_max,
                            int iters, int grid_points) {
    check_spec(spec);
    check_init(init);
    if (!(r_max > 0)) throw InputError("fixed-point horizon must be positive");
    if (iters < 0) throw InputError("iteration count must be nonnegative");
    if (grid_points < 9) throw InputError("fixed-point grid needs at least 9 points");
    const ProblemFns fns(spec);

    const std::size_t M = static_cast<std::size_t>(grid_points);
    const double h = r_max / static_cast<double>(M - 1);
    const double N = spec.N;
    std::vector<double> r(M), u(M, init.u0), v(M, init.v0), du(M, 0.0), dv(M, 0.0);
    std::vector<double> rpow(M); // r^{N-1}
    for (std::size_t i = 0; i < M; ++i) {
        r[i] = static_cast<double>(i) * h;
        rpow[i] = std::pow(r[i], N - 1.0);
    }

    double change = 0.0, prev_change = 0.0;
    int growing = 0;
    std::vector<double> work(M), nu(M), nv(M), ndu(M), ndv(M);
    for (int sweep = 0; sweep < iters; ++sweep) {
        for (std::size_t i = 0; i < M; ++i) work[i] = rpow[i] * fns.g(r[i], v[i]);
        auto P = num::cumulative_integral(work, h);
        ndu[0] = 0.0;
        for (std::size_t i = 1; i < M; ++i) ndu[i] = P[i] / rpow[i];
        auto U = num::cumulative_integral(ndu, h);
        for (std::size_t i = 0; i < M; ++i) nu[i] = init.u0 + U[i];

        for (std::size_t i = 0; i < M; ++i) work[i] = rpow[i] * fns.f(r[i], du[i]);
        auto Q = num::cumulative_integral(work, h);
        ndv[0] = 0.0;
        for (std::size_t i = 1; i < M; ++i) ndv[i] = Q[i] / rpow[i];
        auto V = num::cumulative_integral(ndv, h);
        for (std::size_t i = 0; i < M; ++i) nv[i] = init.v0 + V[i];

        change = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            change = std::max(change, std::abs(nu[i] - u[i]));
            change = std::max(change, std::abs(nv[i] - v[i]));
            if (!std::isfinite(nu[i]) || !std::isfinite(nv[i]))
                throw NumericalError("fixed-point iterate left the finite range; the "
                                     "horizon likely reaches past the blow-up radius");
        }
        u.swap(nu);
        v.swap(nv);
        du.swap(ndu);
        dv.swap(ndv);

        growing = (sweep > 0 && change > prev_change) ? growing + 1 : 0;
        if (growing >= 3)
            throw NumericalError("fixed-point iteration diverging: sup-norm change grew "
                                 "for three consecutive sweeps");
        prev_change = change;
    }

    RadialSolution sol;
    sol.grid.reserve(M);
    for (std::size_t i = 0; i < M; ++i) sol.grid.push_back({r[i], u[i], v[i], du[i], dv[i]});
    sol.residual_norm = change;
    sol.r_reached = r_max;
    return sol;
}

BlowupReport detect_blowup(const RadialSolution& sol, double threshold) {
    const auto& g = sol.grid;
    if (g.size() < 12) throw NumericalError("insufficient tail points for the pole fit");

    // analysis window ends at the last state below the given threshold
    std::size_t end = g.size() - 1;
    while (end > 0 && std::max(g[end].u, g[end].v) > threshold) --end;
    if (end < 11) throw NumericalError("insufficient tail points for the pole fit");

    const double v_end = g[end].v;
    std::size_t begin = end;
    while (begin > 0 && g[begin - 1].v >= v_end * std::pow(10.0, -1.5)) --begin;
    if (end - begin + 1 < 10) begin = end >= 10 ? end - 10 : 0;
    if (end - begin + 1 < 10) throw NumericalError("insufficient tail points for the pole fit");

    std::vector<double> rs, ys, ratios;
    for (std::size_t i = begin; i <= end; ++i) {
        if (g[i].v > 0 && g[i].dv > 0) {
            rs.push_back(g[i].r);
            ys.push_back(g[i].r * g[i].dv / g[i].v);
        }
        if (i > begin && g[i].du > 0 && g[i - 1].du > 0 && g[i].r > g[i - 1].r) {
            const double dlndu =
                std::log(g[i].du / g[i - 1].du) / (g[i].r - g[i - 1].r);
            const double lv = 0.5 * (g[i].dv / g[i].v + g[i - 1].dv / g[i - 1].v);
            if (lv > 0) ratios.push_back(dlndu / lv);
        }
    }
    return report_from_tail(rs, ys, ratios, g.back().r);
}

std::pair<RadialSolution, ProblemSpec> rescale_solution(const RadialSolution& sol,
                                                        double lambda,
                                                        const ProblemSpec& spec) {
    if (!(lambda > 0)) throw InputError("rescaling factor must be positive");
    if (spec.mode() == ProblemSpec::Mode::General)
        throw InputError("rescaling supports the power-law and gradient-descriptor modes");
    check_spec(spec);

    ProblemSpec out_spec = spec;
    out_spec.g_scale *= std::pow(lambda, -(2.0 + spec.a));
    if (spec.power_law()) {
        out_spec.f_scale *= std::pow(lambda, *spec.s - 2.0 - spec.b);
    } else {
        out_spec.f_scale *= std::pow(lambda, -(2.0 + spec.b));
        // f~(r, w) carries h(lambda w): shrink the sample arguments
        auto samples = spec.h->samples;
        for (auto& [arg, val] : samples) arg /= lambda;
        out_spec.h = NonlinearityDesc::table(std::move(samples), spec.h->tail_exponent);
    }
    if (spec.domain.is_ball()) out_spec.domain = Domain::ball(spec.domain.radius * lambda);

    RadialSolution out = sol;
    for (auto& st : out.grid) {
        st.r *= lambda;
        st.du /= lambda;
        st.dv /= lambda;
    }
    out.r_reached = sol.r_reached * lambda;
    if (out.blowup) out.blowup->R_est *= lambda;
    if (out.grid.size() >= 5) out.residual_norm = residual(out, out_spec);
    return {std::move(out), std::move(out_spec)};
}

double residual(const RadialSolution& sol, const ProblemSpec& spec) {
    const auto& g = sol.grid;
    if (g.size() < 5) throw InputError("residual needs at least 5 grid points");
    const ProblemFns fns(spec);
    const double Npow = spec.N - 1.0;

    double worst = 0.0;
    std::vector<double> xs(5), Pu(5), Pv(5);
    for (std::size_t i = 2; i + 2 < g.size(); ++i) {
        bool usable = true;
        for (int k = -2; k <= 2; ++k) {
            const auto& s = g[i + static_cast<std::size_t>(k + 2) - 2];
            if (std::max({s.u, s.v, s.du, s.dv}) > kResidualValueCap || s.du < 0 ||
                s.dv < 0)
                usable = false;
        }
        if (!usable) continue;
        const auto &lo = g[i - 2], &mid = g[i], &hi = g[i + 2];
        const double span = hi.r - lo.r;
        // the difference stencil only measures the defect where it resolves
        // the solution: skip stencils spanning a large relative change (pole
        // tail), a large radius fraction (coarse origin), or duplicate radii
        if (!(span > 0) || span > 0.5 * mid.r) continue;
        if (!(lo.du > 0) || !(lo.dv > 0)) continue;
        if (std::log(hi.du / lo.du) > 0.2 || std::log(hi.dv / lo.dv) > 0.2) continue;
        bool distinct = true;
        for (int k = -2; k < 2; ++k)
            if (!(g[i + static_cast<std::size_t>(k) + 1].r >
                  g[i + static_cast<std::size_t>(k)].r + 1e-12 * mid.r))
                distinct = false;
        if (!distinct) continue;

        for (int k = 0; k < 5; ++k) {
            const auto& s = g[i + static_cast<std::size_t>(k) - 2];
            xs[static_cast<std::size_t>(k)] = s.r;
            Pu[static_cast<std::size_t>(k)] = std::pow(s.r, Npow) * s.du;
            Pv[static_cast<std::size_t>(k)] = std::pow(s.r, Npow) * s.dv;
        }
        const auto w = num::fd_weights(xs, mid.r, 1);
        double dPu = 0, dPv = 0, dU = 0, dV = 0;
        for (int k = 0; k < 5; ++k) {
            const auto& s = g[i + static_cast<std::size_t>(k) - 2];
            dPu += w[static_cast<std::size_t>(k)] * Pu[static_cast<std::size_t>(k)];
            dPv += w[static_cast<std::size_t>(k)] * Pv[static_cast<std::size_t>(k)];
            dU += w[static_cast<std::size_t>(k)] * s.u;
            dV += w[static_cast<std::size_t>(k)] * s.v;
        }
        const double rhs_u = std::pow(mid.r, Npow) * fns.g(mid.r, mid.v);
        const double rhs_v = std::pow(mid.r, Npow) * fns.f(mid.r, mid.du);
        if (rhs_u > 0) worst = std::max(worst, std::abs(dPu - rhs_u) / rhs_u);
        if (rhs_v > 0) worst = std::max(worst, std::abs(dPv - rhs_v) / rhs_v);
        // first-order consistency of the value columns with the derivative
        // columns, where the stencil resolves the variation above roundoff
        if (mid.du > 0 && hi.u - lo.u > 1e-8 * mid.u)
            worst = std::max(worst, std::abs(dU - mid.du) / mid.du);
        if (mid.dv > 0 && hi.v - lo.v > 1e-8 * mid.v)
            worst = std::max(worst, std::abs(dV - mid.dv) / mid.dv);
    }
    return worst;
}

} // namespace radlab
