#pragma once

#include <vector>

namespace radlab::num {

/// Monotone (Fritsch-Carlson) cubic interpolant through strictly increasing
/// abscissae. Monotone data yields a monotone interpolant. Evaluation
/// outside the node range clamps to the boundary values.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    double y_back() const { return y_.back(); }

  private:
    std::vector<double> x_, y_, m_; // nodes, values, node slopes
};

} // namespace radlab::num
