#include "radlab/num/cubic.hpp"

#include <cmath>

namespace radlab::num {

std::array<std::complex<double>, 3> solve_cubic(double a2, double a1, double a0) {
    // Locate one real root (a cubic always has one), then deflate.
    auto p = [&](double x) { return ((x + a2) * x + a1) * x + a0; };
    auto dp = [&](double x) { return (3 * x + 2 * a2) * x + a1; };

    double scale = 1.0 + std::abs(a2) + std::abs(a1) + std::abs(a0);
    double lo = -scale, hi = scale;
    while (p(lo) > 0) lo *= 2;
    while (p(hi) < 0) hi *= 2;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = p(x);
        if (fx > 0)
            hi = x;
        else
            lo = x;
        const double d = dp(x);
        double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-16 * (1.0 + std::abs(x))) {
            x = xn;
            break;
        }
        x = xn;
    }

    // Deflated quadratic x^2 + bx + c.
    const double b = a2 + x;
    const double c = a1 + x * b;
    const double disc = b * b - 4 * c;
    std::array<std::complex<double>, 3> roots;
    roots[0] = x;
    if (disc >= 0) {
        const double sq = std::sqrt(disc);
        // stable pairing to avoid cancellation
        const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
        roots[1] = q;
        roots[2] = (q != 0.0) ? c / q : -b - q;
    } else {
        const double sq = std::sqrt(-disc);
        roots[1] = std::complex<double>(-0.5 * b, 0.5 * sq);
        roots[2] = std::complex<double>(-0.5 * b, -0.5 * sq);
    }
    return roots;
}

} // namespace radlab::num
