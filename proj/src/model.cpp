#include "radlab/model.hpp"

#include <cmath>

#include "radlab/errors.hpp"

namespace radlab {

NonlinearityDesc NonlinearityDesc::power(double coefficient, double exponent) {
    NonlinearityDesc d;
    d.kind = Kind::PowerLaw;
    d.coefficient = coefficient;
    d.exponent = exponent;
    return d;
}

NonlinearityDesc NonlinearityDesc::table(std::vector<std::pair<double, double>> samples,
                                         std::optional<double> tail_exponent) {
    NonlinearityDesc d;
    d.kind = Kind::TabulatedMonotone;
    d.samples = std::move(samples);
    d.tail_exponent = tail_exponent;
    return d;
}

std::string NonlinearityDesc::check() const {
    if (kind == Kind::PowerLaw) {
        if (!(coefficient > 0)) return "power-law coefficient must be positive";
        if (!(exponent >= 0)) return "power-law exponent must be nonnegative";
        return {};
    }
    if (samples.size() < 2) return "tabulated nonlinearity needs at least two samples";
    if (samples.front().first != 0.0)
        return "tabulated nonlinearity must start at argument 0";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second < 0) return "tabulated values must be nonnegative";
        if (i > 0) {
            if (!(samples[i].first > samples[i - 1].first))
                return "tabulated arguments must strictly increase";
            if (samples[i].second < samples[i - 1].second)
                return "tabulated values must be nondecreasing";
        }
    }
    if (tail_exponent && !(*tail_exponent >= 0))
        return "tail exponent must be nonnegative";
    return {};
}

NonlinearityFn::NonlinearityFn(const NonlinearityDesc& d) : desc_(d) {
    const std::string err = d.check();
    if (!err.empty()) throw InputError("nonlinearity descriptor: " + err);
    if (!d.is_power()) {
        std::vector<double> x, y;
        x.reserve(d.samples.size());
        y.reserve(d.samples.size());
        for (const auto& [arg, val] : d.samples) {
            x.push_back(arg);
            y.push_back(val);
        }
        interp_ = std::make_shared<const num::MonotoneCubic>(std::move(x), std::move(y));
    }
}

double NonlinearityFn::operator()(double t) const {
    if (desc_.is_power()) return desc_.coefficient * std::pow(t, desc_.exponent);
    const double t_last = interp_->x_back();
    if (t <= t_last) return (*interp_)(std::max(t, 0.0));
    if (!desc_.tail_exponent)
        throw InputError("tabulated nonlinearity evaluated past its last sample "
                         "without a declared tail exponent");
    return interp_->y_back() * std::pow(t / t_last, *desc_.tail_exponent);
}

ProblemSpec::Mode ProblemSpec::mode() const {
    if (g_general || f_general) return Mode::General;
    if (h) return Mode::GradientDescriptor;
    return Mode::PowerLaw;
}

double ProblemSpec::s_exponent() const {
    if (!s) throw InputError("operation requires the power-law gradient exponent s");
    return *s;
}

ProblemSpec ProblemSpec::power(int N, double a, double b, double p, double s, Domain domain) {
    ProblemSpec spec;
    spec.N = N;
    spec.a = a;
    spec.b = b;
    spec.p = p;
    spec.s = s;
    spec.domain = domain;
    return spec;
}

double divergence_bound_lhs(double a, double b, double p, double s) {
    return p * (s - 2.0) * (s + a * s + b + 2.0) / (1.0 - p * s);
}

bool divergence_bound_holds(int N, double a, double b, double p, double s) {
    return divergence_bound_lhs(a, b, p, s) <= 2.0 * (N + a - 1.0);
}

ValidationReport validate_problem(const ProblemSpec& spec) {
    ValidationReport rep;
    auto violate = [&](const char* code, std::string msg) {
        rep.violations.push_back({code, std::move(msg)});
    };

    if (spec.N < 2) violate("dimension", "space dimension must be at least 2");
    if (!(spec.a >= 0)) violate("weight-a", "radial weight a must be nonnegative");
    if (!(spec.b >= 0)) violate("weight-b", "radial weight b must be nonnegative");
    if (spec.domain.is_ball() && !(spec.domain.radius > 0))
        violate("radius", "ball radius must be positive");
    if (!(spec.g_scale > 0) || !(spec.f_scale > 0))
        violate("scale", "nonlinearity scale factors must be positive");

    const auto mode = spec.mode();
    if (mode != ProblemSpec::Mode::General) {
        if (!(spec.p > 0)) violate("exponent-p", "exponent p on v must be positive");
        if (spec.s && spec.h)
            violate("mode", "exactly one of the power exponent s and the gradient "
                            "descriptor h may be set");
        if (!spec.s && !spec.h)
            violate("mode", "one of the power exponent s or the gradient descriptor h "
                            "is required");
    } else {
        if (!spec.g_general || !spec.f_general)
            violate("mode", "general mode requires both g and f factor pairs");
        if (spec.s || spec.h)
            violate("mode", "general mode excludes the power/gradient descriptors");
    }

    if (spec.s) {
        if (!(*spec.s >= 1)) violate("exponent-s", "gradient exponent s must be >= 1");
        else if (*spec.s == 1.0)
            rep.warnings.push_back("s = 1 sits on the hypothesis boundary for the "
                                   "gradient exponent; results there are accepted but "
                                   "flagged");
    }
    if (spec.h) {
        const std::string err = spec.h->check();
        if (!err.empty()) violate("tabulated-monotone", err);
        else if (!spec.h->has_tail())
            rep.warnings.push_back("gradient descriptor has no tail exponent; "
                                   "unbounded-argument criteria will be rejected");
    }
    for (const auto* pair_opt : {&spec.g_general, &spec.f_general}) {
        if (!*pair_opt) continue;
        for (const auto* d : {&(*pair_opt)->first, &(*pair_opt)->second}) {
            const std::string err = d->check();
            if (!err.empty()) violate("tabulated-monotone", err);
        }
    }

    rep.ok = rep.violations.empty();
    if (rep.ok) {
        rep.ball_conditions_ready = spec.domain.is_ball();
        if (!spec.domain.is_ball() && spec.power_law()) {
            rep.entire_existence_ready = true;
            const double s = *spec.s;
            rep.asymptotics_eligible = spec.p < 1.0 && spec.p * s < 1.0;
            if (rep.asymptotics_eligible &&
                !divergence_bound_holds(spec.N, spec.a, spec.b, spec.p, s))
                rep.warnings.push_back("divergence bound fails: long-range rate limits "
                                       "are not guaranteed for these parameters");
        }
    }
    return rep;
}

ProblemFns::ProblemFns(const ProblemSpec& spec)
    : mode_(static_cast<int>(spec.mode())), a_(spec.a), b_(spec.b), p_(spec.p),
      gs_(spec.g_scale), fs_(spec.f_scale) {
    const auto rep = validate_problem(spec);
    if (!rep.ok) throw InputError("invalid problem: " + rep.violations.front().message);
    switch (spec.mode()) {
    case ProblemSpec::Mode::PowerLaw:
        s_ = *spec.s;
        break;
    case ProblemSpec::Mode::GradientDescriptor:
        h_.emplace(*spec.h);
        break;
    case ProblemSpec::Mode::General:
        g_r_.emplace(spec.g_general->first);
        g_t_.emplace(spec.g_general->second);
        f_r_.emplace(spec.f_general->first);
        f_t_.emplace(spec.f_general->second);
        break;
    }
}

double ProblemFns::g_radial(double r) const {
    if (mode_ == 2) return gs_ * (*g_r_)(r);
    return gs_ * std::pow(r, a_);
}

double ProblemFns::g_arg(double t) const {
    if (mode_ == 2) return (*g_t_)(t);
    return std::pow(t, p_);
}

double ProblemFns::f_radial(double r) const {
    if (mode_ == 2) return fs_ * (*f_r_)(r);
    return fs_ * std::pow(r, b_);
}

double ProblemFns::f_arg(double w) const {
    if (mode_ == 2) return (*f_t_)(w);
    if (mode_ == 1) return (*h_)(w);
    return std::pow(w, s_);
}

} // namespace radlab
