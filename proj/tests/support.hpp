#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "wpflow/spectral.hpp"

namespace testing_support {

using wpflow::Vec;

inline double max_abs(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

inline Vec sample(const wpflow::SpectralGrid& g, const std::function<double(double)>& f) {
  Vec v(g.size());
  for (int j = 0; j < g.size(); ++j) v(j) = f(g.tau()(j));
  return v;
}

inline std::shared_ptr<const wpflow::SpectralGrid> grid(int n, double length) {
  return std::make_shared<const wpflow::SpectralGrid>(n, length);
}

// Fourth-order central difference.
inline double fd4(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double fd4_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

}  // namespace testing_support
