#pragma once
// Integral growth criteria deciding which components of a positive radial
// solution blow up at the ball boundary, plus the whole-space existence
// dichotomy. Power-law instances are decided exactly from the integrand's
// tail exponent; descriptor instances are decided numerically from partial
// integrals at geometric checkpoints, with an explicit inconclusive band
// when the fitted tail exponent sits too close to the critical value.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radlab/model.hpp"

namespace radlab {

enum class Verdict { Convergent, Divergent, Inconclusive };

struct ConvergenceVerdict {
    Verdict verdict = Verdict::Inconclusive;
    double tail_exponent_est = 0.0;
    double confidence = 0.0; ///< in [0, 1]; 1 for exact (analytic) verdicts
};

/// The condition integrals. The two gradient-route conditions compose g with
/// the inverse of an accumulated f-integral; the potential-route conditions
/// integrate powers of the accumulated gradient potential H(t) = int_0^t h.
enum class KoIntegral {
    GradientNecessary,  ///< 1 / g(R, A^{-1}(C int sqrt(f)))        (critical 1)
    GradientSufficient, ///< 1 / g(R, D^{-1}(C (int sqrt(f))^2))    (critical 1)
    PotentialPlain,     ///< 1 / (int_0^s H)^{p/(2p+1)}             (critical 1)
    PotentialWeighted,  ///< s / (int_0^s H)^{p/(2p+1)}             (critical 2)
    PotentialPair,      ///< plain convergent AND weighted divergent
};

enum class RegimeTag {
    BothBounded,
    UBoundedVBlows,
    BothBlowUp,
    NoPositiveSolution,
    GlobalExistence, ///< whole space, positive radial solutions exist
};

struct Certificate {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0; ///< distance of the tail exponent from critical
};

struct Regime {
    RegimeTag tag = RegimeTag::BothBounded;
    bool decided = false;
    std::vector<Certificate> certificates;
};

/// Accumulated gradient potential H(t) = int_0^t h; closed form for power
/// laws, quadrature plus the analytic tail otherwise. Nondecreasing in t.
double eval_H(const NonlinearityDesc& h, double t);

/// A_rho(s) = int_0^s g(rho, t) / sqrt(t) dt; strictly increasing in s.
double eval_A(const ProblemSpec& spec, double rho, double s_val);

/// D(s) = int_0^s g(R, t)^2 dt; strictly increasing in s.
double eval_D(const ProblemSpec& spec, double R, double s_val);

/// Inverse of a strictly increasing map by bracket expansion + bisection.
/// tol is relative to max(1, |y|).
double invert_monotone(const std::function<double(double)>& fun, double y,
                       std::pair<double, double> bracket, double tol = 1e-10);

struct KoOptions {
    double C = 1.0;             ///< the free constant in the gradient-route conditions
    std::optional<double> base_radius; ///< r0 = rho; defaults to R/2
    bool force_numeric = false; ///< evaluate power-law instances numerically too
};

/// Convergence verdict of one condition integral. Power-law mode compares
/// the exact tail exponent against critical; numeric mode fits the local
/// decay exponent at checkpoints s_k = 2^k (k <= 40) and scans the free
/// constant C over {1e-2, 1, 1e2}, forcing Inconclusive on disagreement.
ConvergenceVerdict ko_condition(const ProblemSpec& spec, KoIntegral which,
                                const KoOptions& opts = {});

/// Regime trichotomy on a ball: exact inequalities in power-law mode,
/// assembled from ko_condition verdicts for descriptor instances. An
/// Inconclusive leg yields an undecided regime.
Regime classify_ball(const ProblemSpec& spec, const KoOptions& opts = {});

/// Whole-space dichotomy: no positive radial solution iff ps > 1; otherwise
/// global existence plus eligibility certificates for the rate limits.
Regime classify_entire(const ProblemSpec& spec);

const char* to_string(RegimeTag tag);
const char* to_string(Verdict v);

} // namespace radlab
