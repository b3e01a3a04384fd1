#pragma once

// Bundle handed to the contour machinery: value, derivative ladder, and a
// local magnitude scale used for root-on-boundary thresholds.

#include <complex>
#include <functional>
#include <vector>

namespace qpmid {

struct AnalyticFn {
  std::function<std::complex<double>(std::complex<double>)> f;
  // Entry k of derivs(z, k_max) is the k-th derivative at z.
  std::function<std::vector<std::complex<double>>(std::complex<double>, int)> derivs;
  std::function<double(std::complex<double>)> scale;
};

}  // namespace qpmid
