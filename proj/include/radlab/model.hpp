#pragma once
// Validated problem descriptors for the radial elliptic system
//
//     lap u = g(|x|, v),   lap v = f(|x|, |grad u|)
//
// posed on a centered ball or on the whole space. Three analysis modes are
// supported, selected by which descriptors are present:
//
//   power law           g = r^a v^p,          f = r^b |grad u|^s
//   gradient descriptor g = r^a v^p,          f = r^b h(|grad u|)
//   general             g = g_r(r) g_t(v),    f = f_r(r) f_t(|grad u|)
//
// All types here are immutable after construction and safe to share across
// threads without synchronization.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radlab/num/interp.hpp"

namespace radlab {

/// One-variable nonlinearity: an explicit power law c*t^e, or a monotone
/// table interpolated monotone-cubically and extended past the last sample
/// by a declared power-law tail.
struct NonlinearityDesc {
    enum class Kind { PowerLaw, TabulatedMonotone };

    Kind kind = Kind::PowerLaw;
    double coefficient = 1.0; ///< power law: c > 0
    double exponent = 1.0;    ///< power law: e >= 0
    std::vector<std::pair<double, double>> samples; ///< tabulated (argument, value)
    std::optional<double> tail_exponent; ///< tabulated: growth order past the last sample

    static NonlinearityDesc power(double coefficient, double exponent);
    static NonlinearityDesc table(std::vector<std::pair<double, double>> samples,
                                  std::optional<double> tail_exponent = {});

    /// Empty when well formed, otherwise one violation message.
    std::string check() const;
    bool is_power() const { return kind == Kind::PowerLaw; }
    /// True when evaluation beyond the last sample is defined.
    bool has_tail() const { return is_power() || tail_exponent.has_value(); }
};

/// Callable evaluator for a NonlinearityDesc; builds the tabulated
/// interpolant once so repeated evaluation is cheap.
class NonlinearityFn {
  public:
    explicit NonlinearityFn(const NonlinearityDesc& d);
    double operator()(double t) const;
    const NonlinearityDesc& desc() const { return desc_; }

  private:
    NonlinearityDesc desc_;
    std::shared_ptr<const num::MonotoneCubic> interp_;
};

struct Domain {
    enum class Kind { Ball, EntireSpace };
    Kind kind = Kind::Ball;
    double radius = 1.0; ///< ball radius; unused for the whole space

    static Domain ball(double R) { return {Kind::Ball, R}; }
    static Domain entire() { return {Kind::EntireSpace, 0.0}; }
    bool is_ball() const { return kind == Kind::Ball; }
};

struct ProblemSpec {
    int N = 3;          ///< space dimension, >= 2
    double a = 0.0;     ///< radial weight exponent on g
    double b = 0.0;     ///< radial weight exponent on f
    double p = 1.0;     ///< exponent on v
    std::optional<double> s; ///< power-law exponent on |grad u| (>= 1)
    std::optional<NonlinearityDesc> h; ///< gradient nonlinearity, replaces s
    /// fully general factors (r-dependence, argument-dependence)
    std::optional<std::pair<NonlinearityDesc, NonlinearityDesc>> g_general;
    std::optional<std::pair<NonlinearityDesc, NonlinearityDesc>> f_general;
    /// Library-internal scale factors on g and f. They keep the family
    /// closed under the radius-rescaling map and are not serialized.
    double g_scale = 1.0;
    double f_scale = 1.0;
    Domain domain = Domain::ball(1.0);

    enum class Mode { PowerLaw, GradientDescriptor, General };
    Mode mode() const;
    bool power_law() const { return mode() == Mode::PowerLaw; }
    /// s in power-law mode; throws InputError otherwise.
    double s_exponent() const;

    static ProblemSpec power(int N, double a, double b, double p, double s, Domain domain);
};

/// Positive center values; the radial derivatives vanish at the origin.
struct InitialData {
    double u0 = 1.0;
    double v0 = 1.0;
};

struct ValidationReport {
    struct Violation {
        std::string code;
        std::string message;
    };
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    /// Which analyses the descriptor qualifies for.
    bool ball_conditions_ready = false;  ///< integral blow-up criteria on a ball
    bool entire_existence_ready = false; ///< whole-space existence dichotomy
    bool asymptotics_eligible = false;   ///< whole-space rate limits (p < 1, ps < 1)
};

/// Pure hypothesis check; identical inputs produce identical reports.
ValidationReport validate_problem(const ProblemSpec& spec);

/// Left-hand side of the divergence bound controlling the long-range rate
/// analysis: p (s-2) (s + a s + b + 2) / (1 - ps). The bound holds when this
/// is <= 2 (N + a - 1).
double divergence_bound_lhs(double a, double b, double p, double s);
bool divergence_bound_holds(int N, double a, double b, double p, double s);

/// Separable evaluation of g and f for one spec. Factor conventions:
/// g(r,t) = g_radial(r) * g_arg(t) and likewise for f; the scale factors
/// live in the radial parts.
class ProblemFns {
  public:
    explicit ProblemFns(const ProblemSpec& spec);

    double g(double r, double t) const { return g_radial(r) * g_arg(t); }
    double f(double r, double w) const { return f_radial(r) * f_arg(w); }
    double g_radial(double r) const;
    double g_arg(double t) const;
    double f_radial(double r) const;
    double f_arg(double w) const;

  private:
    int mode_; // 0 power, 1 gradient descriptor, 2 general
    double a_, b_, p_, s_ = 1.0, gs_, fs_;
    std::optional<NonlinearityFn> h_;
    std::optional<NonlinearityFn> g_r_, g_t_, f_r_, f_t_;
};

} // namespace radlab
