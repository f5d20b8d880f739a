#pragma once
// Autonomous flow of the scaled log-derivatives of a radial solution,
//
//   X = r u'/u,  Y = r v'/v,  Z = r^{a+1} v^p / u',  W = r^{b+1} u'^s / v',
//
// against t = ln r. X decouples (X -> 2 - N + Z in the limit), so the core
// flow lives in (Y, Z, W):
//
//   Y' = Y (W - (N-2) - Y)
//   Z' = Z (N + a + pY - Z)
//   W' = W (sZ + N - sN + s + b - W)
//
// The field is cooperative in the positive octant, which gives a
// componentwise comparison principle; the interior equilibrium encodes the
// long-range growth exponents of (u, v).

#include <array>
#include <complex>
#include <vector>

#include "radlab/model.hpp"
#include "radlab/radial_ode.hpp"

namespace radlab {

struct DynParams {
    int N = 3;
    double a = 0.0, b = 0.0;
    double p = 1.0, s = 1.0;

    static DynParams from_spec(const ProblemSpec& spec);
};

using Triple = std::array<double, 3>; ///< (Y, Z, W)

struct DynState {
    double X = 0.0, Y = 0.0, Z = 0.0, W = 0.0;
};

/// Sampled path in the (Y, Z, W) coordinates; X is carried along for
/// trajectories transformed from radial data and reconstructed as 2 - N + Z
/// for flow-generated ones.
struct DynTrajectory {
    DynParams params;
    std::vector<double> t;
    std::vector<double> X, Y, Z, W;
    std::size_t size() const { return t.size(); }
};

struct Equilibrium {
    enum class Label { Boundary, Interior }; ///< Y = 0 face vs interior attractor
    Triple point{};
    Label label = Label::Boundary;
};

struct StabilityReport {
    std::array<std::array<double, 3>, 3> jacobian{};
    double alpha = 0.0, beta = 0.0, gamma = 0.0; ///< char poly: l^3 + alpha l^2 + beta l + (1-ps) gamma
    double routh_margin = 0.0;                   ///< alpha*beta - (1-ps)*gamma
    bool stable = false;
    std::array<std::complex<double>, 3> eigenvalues{};
};

struct HirschReport {
    bool cooperative = false;          ///< off-diagonal partials >= 0 over the box
    double divergence_max_corner = 0.0; ///< max of div H over the box corners
    Triple divergence_argmax{};
    bool divergence_negative = false;
    bool rate_bound_holds = false; ///< p(s-2)(s+as+b+2)/(1-ps) <= 2(N+a-1)
    double rate_bound_lhs = 0.0, rate_bound_rhs = 0.0;
    std::vector<std::string> warnings;
};

enum class OmegaClass { EquilibriumBoundary, EquilibriumInterior, CycleSuspected, Undecided };

/// Pointwise transform of a radial solution grid; skips the leading states
/// whose derivatives have not left zero yet and rejects interior vanishing.
DynTrajectory to_dynamical(const RadialSolution& sol, const ProblemSpec& spec);

/// Exact evaluation of the three field polynomials.
Triple vector_field(const Triple& yzw, const DynParams& params);

/// General Jacobian of the field at any point; at the interior equilibrium
/// it reduces to [[-Y,0,Y],[pZ,-Z,0],[0,sW,-W]].
std::array<std::array<double, 3>, 3> jacobian(const DynParams& params, const Triple& yzw);

/// Both equilibria with Z >= N+a, W >= N+b. Throws for ps >= 1 where the
/// interior one leaves the admissible cone.
std::pair<Equilibrium, Equilibrium> equilibria(const DynParams& params);

struct FlowOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double sample_dt = 0.05; ///< uniform output spacing (Hermite-interpolated)
};

/// Adaptive integration of the core flow from a componentwise nonnegative
/// start; nonnegativity is preserved.
DynTrajectory flow(const DynParams& params, const Triple& start,
                   std::pair<double, double> t_span, const FlowOptions& opts = {});

/// Characteristic polynomial coefficients (alpha, beta, constant term) of a
/// matrix in the structured interior-equilibrium form, where the constant
/// term equals (1 - ps) * Y Z W.
std::array<double, 3> char_poly(const std::array<std::array<double, 3>, 3>& M, double ps);

/// Interior-equilibrium stability: Routh-Hurwitz margin plus an eigenvalue
/// cross-check.
StabilityReport is_asymptotically_stable(const DynParams& params);

/// Cooperativity, the sign of div H over the closed equilibrium box
/// (affine, so corners suffice), and the divergence bound on the parameters.
HirschReport check_hirsch_conditions(const DynParams& params);

/// Classifies the trajectory tail: near an equilibrium, recurrent without
/// convergence (cycle suspected), or undecided. Cycle/undecided verdicts
/// require a tail at least 30 units of t long.
OmegaClass omega_limit(const DynTrajectory& traj);

} // namespace radlab
