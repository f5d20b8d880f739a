#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radlab/dynsys.hpp"
#include "radlab/errors.hpp"
#include "radlab/num/rng.hpp"
#include "radlab/radial_ode.hpp"

using namespace radlab;

namespace {

const DynParams kPinned{3, 0, 0, 0.5, 1.0};

DynParams random_admissible(num::SplitMix64& rng) {
    DynParams q;
    q.N = rng.uniform_int(2, 6);
    q.a = rng.uniform(0, 2);
    q.b = rng.uniform(0, 2);
    q.p = rng.uniform(0.05, 0.95);
    q.s = 1.0 + rng.uniform() * (1.0 / q.p - 1.0) * 0.98; // keeps ps < 1
    return q;
}

// Determinant of lI - M expanded numerically; used as the coefficient oracle
// via polynomial interpolation at l = 1, 2, 3.
double det_shift(const std::array<std::array<double, 3>, 3>& M, double l) {
    std::array<std::array<double, 3>, 3> A{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A[i][j] = (i == j ? l : 0.0) - M[i][j];
    return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
           A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
           A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
}

std::array<double, 3> interpolated_coeffs(const std::array<std::array<double, 3>, 3>& M) {
    // det(lI - M) = l^3 + c2 l^2 + c1 l + c0 from values at l = 1, 2, 3
    const double d1 = det_shift(M, 1) - 1, d2 = det_shift(M, 2) - 8,
                 d3 = det_shift(M, 3) - 27;
    // solve the 3x3 Vandermonde system by elimination
    const double c0 = 3 * d1 - 3 * d2 + d3;
    const double c1 = -2.5 * d1 + 4 * d2 - 1.5 * d3;
    const double c2 = 0.5 * d1 - d2 + 0.5 * d3;
    return {c2, c1, c0};
}

} // namespace

TEST_CASE("vector field vanishes at both equilibria") {
    const auto [boundary, interior] = equilibria(kPinned);
    CHECK(boundary.point[0] == 0.0);
    CHECK(boundary.point[1] == 3.0);
    CHECK(boundary.point[2] == 4.0);
    CHECK(interior.point[0] == 6.0);
    CHECK(interior.point[1] == 6.0);
    CHECK(interior.point[2] == 7.0);
    for (const auto& eq : {boundary, interior}) {
        const auto f = vector_field(eq.point, kPinned);
        for (double c : f) CHECK(std::abs(c) < 1e-12);
    }
}

TEST_CASE("field component at a displaced point follows the closed form") {
    // (Y,Z,W) = (1, N+a, N+b): the Y-equation gives (N+b) - (N-2) - 1 = b+1
    num::SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        DynParams q = random_admissible(rng);
        const Triple x{1.0, q.N + q.a, q.N + q.b};
        const auto f = vector_field(x, q);
        CHECK(f[0] == doctest::Approx(q.b + 1.0).epsilon(1e-13));
    }
}

TEST_CASE("equilibria satisfy the field to 1e-12 relative over random parameters") {
    num::SplitMix64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const DynParams q = random_admissible(rng);
        const auto [boundary, interior] = equilibria(q);
        for (const auto& eq : {boundary, interior}) {
            const auto f = vector_field(eq.point, q);
            const double scale = std::max({1.0, eq.point[0] * eq.point[0],
                                           eq.point[1] * eq.point[1],
                                           eq.point[2] * eq.point[2]});
            for (double c : f) CHECK(std::abs(c) / scale < 1e-12);
        }
        // consistency: the interior Y solves the first equation with W
        CHECK(interior.point[0] ==
              doctest::Approx(interior.point[2] - (q.N - 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("interior equilibrium needs ps < 1") {
    CHECK_THROWS_AS(equilibria(DynParams{3, 0, 0, 1.0, 1.0}), InputError);
    CHECK_THROWS_AS(is_asymptotically_stable(DynParams{3, 0, 0, 1.0, 2.0}), InputError);
}

TEST_CASE("vanishing-p limit of the interior equilibrium decouples") {
    DynParams q{3, 0.5, 0.25, 1e-9, 1.5};
    const auto interior = equilibria(q).second.point;
    // Y -> 2 + b + s(1+a)
    CHECK(interior[0] == doctest::Approx(2.0 + q.b + q.s * (1.0 + q.a)).epsilon(1e-6));
}

TEST_CASE("linearization at the interior equilibrium has the structured form") {
    const auto M = jacobian(kPinned, equilibria(kPinned).second.point);
    CHECK(M[0][0] == doctest::Approx(-6.0));
    CHECK(M[0][1] == 0.0);
    CHECK(M[0][2] == doctest::Approx(6.0));
    CHECK(M[1][0] == doctest::Approx(3.0)); // p Z
    CHECK(M[1][1] == doctest::Approx(-6.0));
    CHECK(M[1][2] == 0.0);
    CHECK(M[2][0] == 0.0);
    CHECK(M[2][1] == doctest::Approx(7.0)); // s W
    CHECK(M[2][2] == doctest::Approx(-7.0));
}

TEST_CASE("finite differences confirm the closed-form Jacobian") {
    num::SplitMix64 rng(4711);
    for (int trial = 0; trial < 20; ++trial) {
        const DynParams q = random_admissible(rng);
        const auto x = equilibria(q).second.point;
        const auto M = jacobian(q, x);
        const double h = 1e-5;
        for (int j = 0; j < 3; ++j) {
            Triple hi = x, lo = x;
            hi[static_cast<std::size_t>(j)] += h;
            lo[static_cast<std::size_t>(j)] -= h;
            const auto fh = vector_field(hi, q), fl = vector_field(lo, q);
            for (int i = 0; i < 3; ++i) {
                const double fd = (fh[static_cast<std::size_t>(i)] -
                                   fl[static_cast<std::size_t>(i)]) /
                                  (2 * h);
                CHECK(std::abs(fd - M[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(j)]) <
                      1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
        // cooperativity: nonnegative off-diagonal entries
        CHECK(M[0][2] >= 0);
        CHECK(M[1][0] >= 0);
        CHECK(M[2][1] >= 0);
        CHECK(M[0][1] == 0.0);
        CHECK(M[1][2] == 0.0);
        CHECK(M[2][0] == 0.0);
    }
}

TEST_CASE("characteristic coefficients match the pinned values exactly") {
    const auto M = jacobian(kPinned, equilibria(kPinned).second.point);
    const auto c = char_poly(M, 0.5);
    CHECK(c[0] == 19.0);
    CHECK(c[1] == 120.0);
    CHECK(c[2] == 126.0);
}

TEST_CASE("characteristic coefficients equal the interpolated determinant") {
    num::SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const DynParams q = random_admissible(rng);
        const auto M = jacobian(q, equilibria(q).second.point);
        const auto ours = char_poly(M, q.p * q.s);
        const auto oracle = interpolated_coeffs(M);
        const double scale =
            std::max({1.0, std::abs(oracle[0]), std::abs(oracle[1]), std::abs(oracle[2])});
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(ours[static_cast<std::size_t>(k)] -
                           oracle[static_cast<std::size_t>(k)]) /
                      scale <
                  1e-10);
    }
}

TEST_CASE("the constant term vanishes at the ps = 1 boundary") {
    // structured matrix with arbitrary positive diagonal magnitudes
    const std::array<std::array<double, 3>, 3> M{
        {{-2.0, 0.0, 2.0}, {1.5, -3.0, 0.0}, {0.0, 4.0, -5.0}}};
    const auto c = char_poly(M, 1.0);
    CHECK(c[2] == 0.0);
}

TEST_CASE("interior equilibrium is stable with the pinned margin") {
    const auto rep = is_asymptotically_stable(kPinned);
    CHECK(rep.alpha == 19.0);
    CHECK(rep.beta == 120.0);
    CHECK(rep.gamma == 252.0);
    CHECK(rep.routh_margin == doctest::Approx(2280.0 - 126.0));
    CHECK(rep.stable);
    for (const auto& ev : rep.eigenvalues) CHECK(ev.real() < 0);
}

TEST_CASE("stability holds across random admissible parameters") {
    num::SplitMix64 rng(2718);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rep = is_asymptotically_stable(random_admissible(rng));
        CHECK(rep.stable);
        CHECK(rep.routh_margin > 0);
        // two-sided arithmetic-geometric bound: alpha*beta >= 9 gamma
        CHECK(rep.alpha * rep.beta >= 9.0 * rep.gamma * (1 - 1e-12));
    }
}

TEST_CASE("stability margin degenerates as ps approaches 1") {
    double prev = -1.0;
    for (const double s : {1.0, 1.6, 1.9, 1.99}) {
        const auto rep = is_asymptotically_stable(DynParams{3, 0, 0, 0.5, s});
        double slowest = 1e300;
        for (const auto& ev : rep.eigenvalues) slowest = std::min(slowest, -ev.real());
        if (prev >= 0) CHECK(slowest < prev);
        prev = slowest;
    }
}

TEST_CASE("flow keeps the interior equilibrium fixed") {
    const auto x2 = equilibria(kPinned).second.point;
    const auto traj = flow(kPinned, x2, {0.0, 50.0});
    double drift = 0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        drift = std::max({drift, std::abs(traj.Y[i] - x2[0]), std::abs(traj.Z[i] - x2[1]),
                          std::abs(traj.W[i] - x2[2])});
    CHECK(drift < 1e-8);
}

TEST_CASE("flow from a perturbed boundary equilibrium converges to the interior one") {
    const auto [boundary, interior] = equilibria(kPinned);
    Triple start = boundary.point;
    start[0] += 1e-3;
    const auto traj = flow(kPinned, start, {0.0, 60.0});
    const std::size_t n = traj.size() - 1;
    CHECK(std::abs(traj.Y[n] - interior.point[0]) < 1e-6);
    CHECK(std::abs(traj.Z[n] - interior.point[1]) < 1e-6);
    CHECK(std::abs(traj.W[n] - interior.point[2]) < 1e-6);
    CHECK(omega_limit(traj) == OmegaClass::EquilibriumInterior);
}

TEST_CASE("componentwise order of initial states is preserved by the flow") {
    num::SplitMix64 rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        const DynParams q = random_admissible(rng);
        const auto x2 = equilibria(q).second.point;
        Triple lo, hi;
        for (int k = 0; k < 3; ++k) {
            const double bound = 1.5 * x2[static_cast<std::size_t>(k)];
            const double u1 = rng.uniform(0.0, bound), u2 = rng.uniform(0.0, bound);
            lo[static_cast<std::size_t>(k)] = std::min(u1, u2);
            hi[static_cast<std::size_t>(k)] = std::max(u1, u2);
        }
        const auto t_lo = flow(q, lo, {0.0, 10.0});
        const auto t_hi = flow(q, hi, {0.0, 10.0});
        const std::size_t n = std::min(t_lo.size(), t_hi.size());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(t_hi.Y[i] >= t_lo.Y[i] - 1e-8);
            CHECK(t_hi.Z[i] >= t_lo.Z[i] - 1e-8);
            CHECK(t_hi.W[i] >= t_lo.W[i] - 1e-8);
        }
    }
}

TEST_CASE("transformed exact power data gives a constant trajectory") {
    const auto spec = ProblemSpec::power(3, 0, 0, 0.5, 1.0, Domain::entire());
    const double beta = 6.0, alpha = 5.0, cv = 1.0 / 63504.0, cu = 1.0 / 7560.0;
    RadialSolution sol;
    for (int i = 0; i <= 200; ++i) {
        const double r = std::exp(std::log(0.5) + i * (std::log(5.0) - std::log(0.5)) / 200.0);
        sol.grid.push_back({r, cu * std::pow(r, alpha), cv * std::pow(r, beta),
                            cu * alpha * std::pow(r, alpha - 1),
                            cv * beta * std::pow(r, beta - 1)});
    }
    const auto traj = to_dynamical(sol, spec);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.X[i] == doctest::Approx(alpha).epsilon(1e-12));
        CHECK(traj.Y[i] == doctest::Approx(beta).epsilon(1e-12));
    }
}

TEST_CASE("trajectory of a real run starts at the boundary face and ends at the interior") {
    // the slowest eigenvalue here is ~1.3, so the 1e-4 ball around the
    // interior equilibrium is reached between r = 1e4 and 1e5
    SolverConfig cfg;
    cfg.r_max = 1e5;
    const auto spec = ProblemSpec::power(3, 0, 0, 0.5, 1.0, Domain::entire());
    const auto sol = integrate_radial(spec, {1, 1}, cfg);
    const auto traj = to_dynamical(sol, spec);
    const auto [boundary, interior] = equilibria(kPinned);

    CHECK(traj.Y.front() < 1e-6);                      // Y -> 0 into the origin
    CHECK(traj.Z.front() == doctest::Approx(3.0).epsilon(1e-6)); // Z -> N+a
    CHECK(traj.W.front() == doctest::Approx(4.0).epsilon(1e-6)); // W -> boundary W

    const std::size_t n = traj.size() - 1;
    CHECK(std::abs(traj.Y[n] - interior.point[0]) < 1e-4);
    CHECK(std::abs(traj.Z[n] - interior.point[1]) < 1e-4);
    CHECK(std::abs(traj.W[n] - interior.point[2]) < 1e-4);

    // X - Z -> 2 - N along the tail
    CHECK(traj.X[n] - traj.Z[n] == doctest::Approx(2.0 - 3.0).epsilon(1e-3));

    // box bounds along the whole trajectory
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.Y[i] >= -1e-6);
        CHECK(traj.Y[i] <= interior.point[0] + 1e-4);
        CHECK(traj.Z[i] >= boundary.point[1] - 1e-4);
        CHECK(traj.Z[i] <= interior.point[1] + 1e-4);
        CHECK(traj.W[i] >= boundary.point[2] - 1e-4);
        CHECK(traj.W[i] <= interior.point[2] + 1e-4);
    }

    CHECK(omega_limit(traj) == OmegaClass::EquilibriumInterior);
}

TEST_CASE("degenerate grids are rejected by the transform") {
    const auto spec = ProblemSpec::power(3, 0, 0, 1.0, 1.0, Domain::entire());
    const auto sol = picard_solve(spec, {1, 1}, 1.0, 0, 101); // derivatives stay zero
    CHECK_THROWS_AS(to_dynamical(sol, spec), InputError);
}

TEST_CASE("divergence sign and rate bound at the pinned parameters") {
    const auto rep = check_hirsch_conditions(kPinned);
    CHECK(rep.cooperative);
    CHECK(rep.rate_bound_lhs == doctest::Approx(-3.0));
    CHECK(rep.rate_bound_rhs == doctest::Approx(4.0));
    CHECK(rep.rate_bound_holds);
    CHECK(rep.divergence_negative);
    CHECK(rep.divergence_max_corner == doctest::Approx(-4.0));
    CHECK(rep.warnings.empty());
}

TEST_CASE("corner test passes whenever s <= 2 and p <= 2") {
    num::SplitMix64 rng(555);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        DynParams q = random_admissible(rng);
        if (q.s > 2.0) continue;
        const auto rep = check_hirsch_conditions(q);
        CHECK(rep.divergence_negative);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("equilibrium trajectories classify; a synthetic loop is flagged as a cycle") {
    // constant at the boundary equilibrium
    DynTrajectory at_boundary;
    at_boundary.params = kPinned;
    for (int i = 0; i <= 400; ++i) {
        at_boundary.t.push_back(0.1 * i);
        at_boundary.Y.push_back(0.0);
        at_boundary.Z.push_back(3.0);
        at_boundary.W.push_back(4.0);
    }
    CHECK(omega_limit(at_boundary) == OmegaClass::EquilibriumBoundary);

    // synthetic loop in the (Y, Z) plane
    DynTrajectory loop;
    loop.params = kPinned;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 0.01 * i;
        loop.t.push_back(t);
        loop.Y.push_back(1.0 + 0.5 * std::cos(t));
        loop.Z.push_back(1.0 + 0.5 * std::sin(t));
        loop.W.push_back(1.0);
    }
    CHECK(omega_limit(loop) == OmegaClass::CycleSuspected);

    // too short for a cycle verdict
    DynTrajectory short_loop = loop;
    short_loop.t.resize(900);
    short_loop.Y.resize(900);
    short_loop.Z.resize(900);
    short_loop.W.resize(900);
    CHECK_THROWS_AS(omega_limit(short_loop), InputError);
}
