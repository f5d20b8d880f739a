#pragma once

#include <array>
#include <complex>

namespace radlab::num {

/// Roots of the monic cubic x^3 + a2 x^2 + a1 x + a0.
std::array<std::complex<double>, 3> solve_cubic(double a2, double a1, double a0);

} // namespace radlab::num
