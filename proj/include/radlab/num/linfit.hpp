#pragma once

#include <cstddef>
#include <vector>

namespace radlab::num {

/// Ordinary least squares y = intercept + slope * x with standard errors.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_se = 0.0;
    double slope_se = 0.0;
    double rss = 0.0;
    std::size_t n = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace radlab::num
