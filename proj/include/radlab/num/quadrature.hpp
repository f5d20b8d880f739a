#pragma once

#include <functional>
#include <vector>

namespace radlab::num {

/// Adaptive Gauss-Kronrod (G7, K15) quadrature of f over [a, b].
/// Splits intervals until the local error estimate passes the mixed
/// relative/absolute test. Throws NumericalError when the interval budget
/// runs out before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rtol = 1e-10, double atol = 1e-14,
                          int max_intervals = 4096);

/// Fourth-order cumulative integral of uniformly spaced samples with spacing
/// h. Returns prefix integrals, out[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& values, double h);

} // namespace radlab::num
