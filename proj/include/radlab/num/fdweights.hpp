#pragma once

#include <vector>

namespace radlab::num {

/// Fornberg weights: given distinct nodes x and an evaluation point x0,
/// returns w such that sum w[i] f(x[i]) approximates the m-th derivative of
/// f at x0 to the maximal order the stencil supports.
std::vector<double> fd_weights(const std::vector<double>& x, double x0, int m);

} // namespace radlab::num
