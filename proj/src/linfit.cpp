#include "radlab/num/linfit.hpp"

#include <cmath>

#include "radlab/errors.hpp"

namespace radlab::num {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw InputError("linear fit needs >= 2 matching points");
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    if (sxx <= 0) throw NumericalError("degenerate abscissae in linear fit");

    LinearFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    if (n > 2) {
        const double s2 = f.rss / static_cast<double>(n - 2);
        f.slope_se = std::sqrt(s2 / sxx);
        f.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + xm * xm / sxx));
    }
    return f;
}

} // namespace radlab::num
