#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ptq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Thrown when a propagated state grows past the representable range.
/// Carries the evolution time at which the guard tripped.
class OverflowError : public std::range_error {
 public:
  OverflowError(const std::string& what, double time)
      : std::range_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace ptq
