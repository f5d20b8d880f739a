#include "radlab/dynsys.hpp"

#include <algorithm>
#include <cmath>

#include "radlab/errors.hpp"
#include "radlab/num/cubic.hpp"
#include "radlab/num/ode45.hpp"

namespace radlab {

namespace {

double dist_inf(const Triple& x, const Triple& y) {
    return std::max({std::abs(x[0] - y[0]), std::abs(x[1] - y[1]), std::abs(x[2] - y[2])});
}

void check_params(const DynParams& q) {
    if (q.N < 2 || !(q.a >= 0) || !(q.b >= 0) || !(q.p > 0) || !(q.s >= 1))
        throw InputError("invalid flow parameters");
}

} // namespace

DynParams DynParams::from_spec(const ProblemSpec& spec) {
    if (!spec.power_law())
        throw InputError("the autonomous flow requires power-law nonlinearities");
    return {spec.N, spec.a, spec.b, spec.p, *spec.s};
}

DynTrajectory to_dynamical(const RadialSolution& sol, const ProblemSpec& spec) {
    const DynParams q = DynParams::from_spec(spec);
    DynTrajectory traj;
    traj.params = q;

    bool interior = false;
    for (const auto& st : sol.grid) {
        const bool positive = st.r > 0 && st.u > 0 && st.v > 0 && st.du > 0 && st.dv > 0;
        if (!positive) {
            if (interior)
                throw InputError("vanishing u, v, u' or v' inside the trajectory range");
            continue; // derivatives have not left zero yet
        }
        interior = true;
        traj.t.push_back(std::log(st.r));
        traj.X.push_back(st.r * st.du / st.u);
        traj.Y.push_back(st.r * st.dv / st.v);
        traj.Z.push_back(std::pow(st.r, q.a + 1.0) * std::pow(st.v, q.p) / st.du);
        traj.W.push_back(std::pow(st.r, q.b + 1.0) * std::pow(st.du, q.s) / st.dv);
    }
    if (traj.size() < 2) throw InputError("trajectory transform needs positive derivatives");
    return traj;
}

Triple vector_field(const Triple& x, const DynParams& q) {
    const double Y = x[0], Z = x[1], W = x[2];
    const double N = q.N;
    return {Y * (W - (N - 2.0) - Y), Z * (N + q.a + q.p * Y - Z),
            W * (q.s * Z + N - q.s * N + q.s + q.b - W)};
}

std::array<std::array<double, 3>, 3> jacobian(const DynParams& q, const Triple& x) {
    const double Y = x[0], Z = x[1], W = x[2];
    const double N = q.N;
    return {{{W - (N - 2.0) - 2.0 * Y, 0.0, Y},
             {q.p * Z, N + q.a + q.p * Y - 2.0 * Z, 0.0},
             {0.0, q.s * W, q.s * Z + N - q.s * N + q.s + q.b - 2.0 * W}}};
}

std::pair<Equilibrium, Equilibrium> equilibria(const DynParams& q) {
    check_params(q);
    const double ps = q.p * q.s;
    if (!(ps < 1.0))
        throw InputError("the interior equilibrium requires ps < 1");
    const double N = q.N;
    Equilibrium boundary;
    boundary.label = Equilibrium::Label::Boundary;
    boundary.point = {0.0, N + q.a, N + q.s * (q.a + 1.0) + q.b};

    const double growth = (q.b + q.s * (1.0 + q.a + 2.0 * q.p)) / (1.0 - ps);
    Equilibrium interior;
    interior.label = Equilibrium::Label::Interior;
    interior.point = {2.0 + growth, N + q.a + q.p * (2.0 + growth), N + growth};
    return {boundary, interior};
}

DynTrajectory flow(const DynParams& q, const Triple& start, std::pair<double, double> t_span,
                   const FlowOptions& opts) {
    check_params(q);
    if (!(start[0] >= 0 && start[1] >= 0 && start[2] >= 0))
        throw InputError("flow start must be componentwise nonnegative");
    if (!(t_span.second > t_span.first)) throw InputError("empty flow time span");

    auto rhs = [&](double, const num::StateVec<3>& y) {
        Triple v = vector_field({y[0], y[1], y[2]}, q);
        return num::StateVec<3>{v[0], v[1], v[2]};
    };

    DynTrajectory traj;
    traj.params = q;
    const double dt = opts.sample_dt;
    double next_sample = t_span.first;
    auto emit = [&](double t, const num::StateVec<3>& y) {
        traj.t.push_back(t);
        traj.Y.push_back(std::max(y[0], 0.0));
        traj.Z.push_back(std::max(y[1], 0.0));
        traj.W.push_back(std::max(y[2], 0.0));
        traj.X.push_back(2.0 - q.N + std::max(y[1], 0.0)); // limit reconstruction
    };

    num::StepControl ctl;
    ctl.rtol = opts.rtol;
    ctl.atol = opts.atol;
    ctl.max_step = std::max(dt, (t_span.second - t_span.first) / 16.0);

    num::StateVec<3> y0{start[0], start[1], start[2]};
    emit(t_span.first, y0);
    next_sample += dt;

    auto observe = [&](const num::StepRecord<3>& rec) {
        while (next_sample <= rec.t1 + 1e-14) {
            const auto y = num::hermite_eval(rec, std::min(next_sample, rec.t1));
            emit(next_sample, y);
            next_sample += dt;
        }
        return num::StepAction::Continue;
    };
    const auto status =
        integrate_ode<3>(rhs, t_span.first, t_span.second, y0, ctl, observe);
    if (status.step_underflow || status.budget_exhausted)
        throw NumericalError("flow integration failed (step underflow or budget)");
    return traj;
}

std::array<double, 3> char_poly(const std::array<std::array<double, 3>, 3>& M, double ps) {
    const double Y = -M[0][0], Z = -M[1][1], W = -M[2][2];
    return {Y + Z + W, Y * Z + Z * W + Y * W, (1.0 - ps) * (Y * Z * W)};
}

StabilityReport is_asymptotically_stable(const DynParams& q) {
    check_params(q);
    const double ps = q.p * q.s;
    if (!(ps < 1.0)) throw InputError("stability analysis requires ps < 1");
    const auto [boundary, interior] = equilibria(q);
    (void)boundary;
    const double Y = interior.point[0], Z = interior.point[1], W = interior.point[2];

    StabilityReport rep;
    rep.jacobian = {{{-Y, 0.0, Y}, {q.p * Z, -Z, 0.0}, {0.0, q.s * W, -W}}};
    const auto coeffs = char_poly(rep.jacobian, ps);
    rep.alpha = coeffs[0];
    rep.beta = coeffs[1];
    rep.gamma = Y * Z * W;
    rep.routh_margin = rep.alpha * rep.beta - (1.0 - ps) * rep.gamma;
    rep.eigenvalues = num::solve_cubic(coeffs[0], coeffs[1], coeffs[2]);
    rep.stable = true;
    for (const auto& ev : rep.eigenvalues)
        if (!(ev.real() < 0)) rep.stable = false;
    return rep;
}

HirschReport check_hirsch_conditions(const DynParams& q) {
    check_params(q);
    const double ps = q.p * q.s;
    if (!(ps < 1.0)) throw InputError("the equilibrium box requires ps < 1");
    const auto [lo_eq, hi_eq] = equilibria(q);

    HirschReport rep;
    rep.rate_bound_lhs = divergence_bound_lhs(q.a, q.b, q.p, q.s);
    rep.rate_bound_rhs = 2.0 * (q.N + q.a - 1.0);
    rep.rate_bound_holds = rep.rate_bound_lhs <= rep.rate_bound_rhs;

    // Off-diagonal partials are Y, pZ and sW: nonnegative on the whole
    // positive octant, hence on the box.
    rep.cooperative = lo_eq.point[0] >= 0 && lo_eq.point[1] >= 0 && lo_eq.point[2] >= 0;

    // div H = (p-2)Y + (s-2)Z - W + 2 + a + N(1-s) + s + b is affine, so its
    // maximum over the box sits at a corner.
    const double c0 = 2.0 + q.a + q.N * (1.0 - q.s) + q.s + q.b;
    rep.divergence_max_corner = -1e300;
    for (int mask = 0; mask < 8; ++mask) {
        const Triple c{(mask & 1) ? hi_eq.point[0] : lo_eq.point[0],
                       (mask & 2) ? hi_eq.point[1] : lo_eq.point[1],
                       (mask & 4) ? hi_eq.point[2] : lo_eq.point[2]};
        const double div = (q.p - 2.0) * c[0] + (q.s - 2.0) * c[1] - c[2] + c0;
        if (div > rep.divergence_max_corner) {
            rep.divergence_max_corner = div;
            rep.divergence_argmax = c;
        }
    }
    rep.divergence_negative = rep.divergence_max_corner < 0;
    if (rep.rate_bound_holds && !rep.divergence_negative)
        rep.warnings.push_back("rate bound holds but div H is not negative at every box "
                               "corner (equality-region case)");
    return rep;
}

OmegaClass omega_limit(const DynTrajectory& traj) {
    if (traj.size() < 8) throw InputError("trajectory too short to classify");
    const double ps = traj.params.p * traj.params.s;
    const Triple end{traj.Y.back(), traj.Z.back(), traj.W.back()};
    constexpr double kConvergedTol = 1e-4;

    // convergence is decidable regardless of the span
    {
        const DynParams& q = traj.params;
        const Triple boundary{0.0, q.N + q.a, q.N + q.s * (q.a + 1.0) + q.b};
        if (dist_inf(end, boundary) < kConvergedTol) return OmegaClass::EquilibriumBoundary;
        if (ps < 1.0) {
            const auto eq = equilibria(q);
            if (dist_inf(end, eq.second.point) < kConvergedTol)
                return OmegaClass::EquilibriumInterior;
        }
    }

    if (traj.t.back() - traj.t.front() < 30.0)
        throw InputError("cycle classification needs a trajectory span of at least 30");

    // recurrence scan over the trailing half
    const std::size_t n = traj.size();
    const std::size_t half = n / 2;
    auto point = [&](std::size_t i) { return Triple{traj.Y[i], traj.Z[i], traj.W[i]}; };
    const Triple last = point(n - 1);
    constexpr double kRecurrenceTol = 1e-3;
    double excursion = 0.0;
    for (std::size_t i = n - 2; i > half; --i) {
        const double d = dist_inf(point(i), last);
        excursion = std::max(excursion, d);
        if (d < kRecurrenceTol && excursion > 10.0 * kRecurrenceTol &&
            traj.t[n - 1] - traj.t[i] > 0.5)
            return OmegaClass::CycleSuspected;
    }
    return OmegaClass::Undecided;
}

} // namespace radlab
