#pragma once
// Embedded Dormand-Prince 5(4) one-step integrator with PI step-size
// control. The driver calls an observer after every accepted step with both
// step endpoints and the derivatives there, which is enough for cubic
// Hermite interpolation inside the step.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace radlab::num {

template <std::size_t Dim>
using StateVec = std::array<double, Dim>;

enum class StepAction { Continue, Stop };

struct StepControl {
    double rtol = 1e-9;
    double atol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0; ///< 0 selects a starting step automatically
    std::size_t max_steps = 20'000'000;
};

/// One accepted step [t0, t1] with states and derivatives at both ends.
template <std::size_t Dim>
struct StepRecord {
    double t0 = 0.0, t1 = 0.0;
    StateVec<Dim> y0{}, y1{}, f0{}, f1{};
};

struct IntegrationStatus {
    bool reached_end = false;     ///< integrated all the way to t_end
    bool stopped = false;         ///< observer requested a stop
    bool step_underflow = false;  ///< step shrank below the representable floor
    bool budget_exhausted = false;
    double t_final = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

template <std::size_t Dim>
StateVec<Dim> hermite_eval(const StepRecord<Dim>& s, double t) {
    const double h = s.t1 - s.t0;
    const double th = (t - s.t0) / h;
    const double th2 = th * th, th3 = th2 * th;
    const double h00 = 2 * th3 - 3 * th2 + 1;
    const double h10 = th3 - 2 * th2 + th;
    const double h01 = -2 * th3 + 3 * th2;
    const double h11 = th3 - th2;
    StateVec<Dim> y;
    for (std::size_t i = 0; i < Dim; ++i)
        y[i] = h00 * s.y0[i] + h * h10 * s.f0[i] + h01 * s.y1[i] + h * h11 * s.f1[i];
    return y;
}

namespace detail {
template <std::size_t Dim>
bool finite(const StateVec<Dim>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}
} // namespace detail

/// Integrate y' = rhs(t, y) from t0 to t_end (t_end > t0).
/// Observer signature: StepAction(const StepRecord<Dim>&).
template <std::size_t Dim, class Rhs, class Observer>
IntegrationStatus integrate_ode(Rhs&& rhs, double t0, double t_end, StateVec<Dim> y,
                                const StepControl& ctl, Observer&& observe) {
    // Dormand-Prince tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat, bhat being the embedded 4th-order weights.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    IntegrationStatus st;
    double t = t0;
    StateVec<Dim> k1 = rhs(t, y);
    if (!detail::finite(k1)) {
        st.t_final = t;
        st.step_underflow = true;
        return st;
    }

    const double span = t_end - t0;
    double h = ctl.initial_step;
    if (h <= 0.0) {
        // crude norm-based guess, then bounded by the controller anyway
        double ny = 0, nf = 0;
        for (std::size_t i = 0; i < Dim; ++i) {
            double sc = ctl.atol + ctl.rtol * std::abs(y[i]);
            ny += (y[i] / sc) * (y[i] / sc);
            nf += (k1[i] / sc) * (k1[i] / sc);
        }
        h = (nf > 0) ? 0.01 * std::sqrt(ny / nf) : 1e-6 * span;
        h = std::min({h, span, ctl.max_step});
        if (h <= 0) h = 1e-6 * span;
    }
    double facold = 1e-4;

    StateVec<Dim> k2, k3, k4, k5, k6, k7, ynew, ytmp;
    // stop once within rounding distance of the endpoint; a last degenerate
    // step would only pollute the output grid
    while (t < t_end - 1e-12 * std::abs(span)) {
        if (st.accepted + st.rejected >= ctl.max_steps) {
            st.budget_exhausted = true;
            st.t_final = t;
            return st;
        }
        const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::abs(t), std::abs(span));
        if (h < h_floor) {
            st.step_underflow = true;
            st.t_final = t;
            return st;
        }
        h = std::min(h, ctl.max_step);
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        auto stage = [&](double frac, const StateVec<Dim>& yy) { return rhs(t + frac * h, yy); };
        for (std::size_t i = 0; i < Dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = stage(c2, ytmp);
        for (std::size_t i = 0; i < Dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = stage(c3, ytmp);
        for (std::size_t i = 0; i < Dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = stage(c4, ytmp);
        for (std::size_t i = 0; i < Dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = stage(c5, ytmp);
        for (std::size_t i = 0; i < Dim; ++i)
            ytmp[i] = y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = stage(1.0, ytmp);
        for (std::size_t i = 0; i < Dim; ++i)
            ynew[i] = y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = stage(1.0, ynew); // FSAL

        double err = 0.0;
        bool ok = detail::finite(k2) && detail::finite(k3) && detail::finite(k4) &&
                  detail::finite(k5) && detail::finite(k6) && detail::finite(ynew) &&
                  detail::finite(k7);
        if (ok) {
            for (std::size_t i = 0; i < Dim; ++i) {
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                const double sc =
                    ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / Dim);
        } else {
            err = 1e10;
        }

        if (err <= 1.0) {
            StepRecord<Dim> rec{t, t + h, y, ynew, k1, k7};
            t += h;
            y = ynew;
            k1 = k7;
            ++st.accepted;
            const double fac11 = std::pow(std::max(err, 1e-16), 0.17);
            double fac = fac11 / std::pow(facold, 0.04);
            fac = std::max(0.2, std::min(5.0, fac / 0.9));
            h = h / fac;
            facold = std::max(err, 1e-4);
            if (observe(rec) == StepAction::Stop) {
                st.stopped = true;
                st.t_final = t;
                return st;
            }
            if (last && t >= t_end) break;
        } else {
            ++st.rejected;
            const double fac11 = std::pow(std::min(err, 1e10), 0.17);
            h = h / std::min(10.0, fac11 / 0.9);
        }
    }
    st.reached_end = true;
    st.t_final = t;
    return st;
}

} // namespace radlab::num
