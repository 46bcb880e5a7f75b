#include "wpflow/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wpflow/errors.hpp"

namespace wpflow {

using std::numbers::pi;

SpectralGrid::SpectralGrid(int n, double length) : n_(n), length_(length) {
  if (n < 8) throw std::invalid_argument("SpectralGrid: N must be >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("SpectralGrid: interval length must be positive");

  const int m = n + 1;
  tau_.resize(m);
  for (int j = 0; j < m; ++j) tau_(j) = j * length / n;
  tau_(n) = length;

  // Transforms and their compositions are accumulated in long double; the
  // differentiation matrices have entries of size (N pi / L)^2 and would
  // otherwise lose several digits on low modes.
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const long double lpi = std::numbers::pi_v<long double>;
  LMat A(m, m), B = LMat::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // reduce jk mod 2N so the large-argument cos/sin stay accurate
      const long jk = (static_cast<long>(j) * k) % (2L * n);
      A(j, k) = std::cos(jk * lpi / n);
      if (j > 0 && j < n && k > 0 && k < n) B(j, k) = std::sin(jk * lpi / n);
    }
  }
  LMat Ainv(m, m);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      const int w = (1 + (k == 0)) * (1 + (j == 0)) * (1 + (k == n)) * (1 + (j == n));
      Ainv(k, j) = 2.0L * A(j, k) / (n * w);
    }
  }
  const LMat Binv = (2.0L / n) * B.transpose();

  // mode-space derivatives: d/dtau cos -> -k sin, d/dtau sin -> +k cos,
  // restricted to the resolved sine range 1..N-1
  LVec wave = LVec::Zero(m);
  for (int k = 1; k < n; ++k) wave(k) = k * lpi / length;
  const LVec wave2 = wave.array().square();

  LMat c1 = B * (-wave).asDiagonal() * Ainv;
  LMat c2 = A * (-wave2).asDiagonal() * Ainv;
  const LMat d1 = A * wave.asDiagonal() * Binv;
  const LMat d2 = B * (-wave2).asDiagonal() * Binv;
  // even-class operators annihilate constants exactly
  for (int i = 0; i < m; ++i) {
    c1(i, i) -= c1.row(i).sum();
    c2(i, i) -= c2.row(i).sum();
  }

  cos_ = A.cast<double>();
  cos_inv_ = Ainv.cast<double>();
  sin_ = B.cast<double>();
  sin_inv_ = Binv.cast<double>();
  c1_ = c1.cast<double>();
  c2_ = c2.cast<double>();
  d1_ = d1.cast<double>();
  d2_ = d2.cast<double>();
}

void SpectralGrid::check_size(const Vec& v, const char* what) const {
  if (v.size() != n_ + 1)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n_ + 1) +
                                " values, got " + std::to_string(v.size()));
}

Vec SpectralGrid::even_to_coeffs(const Vec& values) const {
  check_size(values, "even_to_coeffs");
  return cos_inv_ * values;
}

Vec SpectralGrid::coeffs_to_even(const Vec& coeffs) const {
  check_size(coeffs, "coeffs_to_even");
  return cos_ * coeffs;
}

Vec SpectralGrid::odd_to_coeffs(const Vec& values) const {
  check_size(values, "odd_to_coeffs");
  return sin_inv_ * values;
}

Vec SpectralGrid::coeffs_to_odd(const Vec& coeffs) const {
  check_size(coeffs, "coeffs_to_odd");
  return sin_ * coeffs;
}

Vec SpectralGrid::to_coeffs(const Vec& values, Parity parity) const {
  return parity == Parity::Even ? even_to_coeffs(values) : odd_to_coeffs(values);
}

Vec SpectralGrid::from_coeffs(const Vec& coeffs, Parity parity) const {
  return parity == Parity::Even ? coeffs_to_even(coeffs) : coeffs_to_odd(coeffs);
}

double SpectralGrid::integrate_even(const Vec& values) const {
  check_size(values, "integrate_even");
  return length_ * cos_inv_.row(0).dot(values);
}

double SpectralGrid::integrate_odd(const Vec& values) const {
  const Vec g = odd_to_coeffs(values);
  double sum = 0.0;
  for (int k = 1; k < n_; k += 2) sum += g(k) * 2.0 / k;
  return sum * length_ / pi;
}

Vec SpectralGrid::antiderivative_odd(const Vec& values) const {
  const Vec g = odd_to_coeffs(values);
  // int_0^tau sin(k pi s/L) ds = (L / k pi) (1 - cos(k pi tau/L))
  Vec f = Vec::Zero(n_ + 1);
  for (int k = 1; k < n_; ++k) {
    const double w = g(k) * length_ / (k * pi);
    f(0) += w;
    f(k) -= w;
  }
  return coeffs_to_even(f);
}

Vec SpectralGrid::dealias(const Vec& values, Parity parity) const {
  Vec c = to_coeffs(values, parity);
  for (int k = dealias_cutoff() + 1; k <= n_; ++k) c(k) = 0.0;
  return from_coeffs(c, parity);
}

Vec SpectralGrid::project_symmetric(const Vec& values, Parity parity) const {
  Vec c = to_coeffs(values, parity);
  for (int k = 1; k <= n_; k += 2) c(k) = 0.0;
  return from_coeffs(c, parity);
}

double SpectralGrid::symmetry_defect(const Vec& values, Parity parity) const {
  const Vec c = to_coeffs(values, parity);
  double worst = 0.0;
  for (int k = 1; k <= n_; k += 2) worst = std::max(worst, std::abs(c(k)));
  return worst;
}

Vec SpectralGrid::divide_odd(const Vec& g, const Vec& h) const {
  check_size(g, "divide_odd");
  check_size(h, "divide_odd");
  const double scale = h.cwiseAbs().maxCoeff();
  Vec f(n_ + 1);
  for (int j = 1; j < n_; ++j) {
    if (!(std::abs(h(j)) > 1e-14 * scale))
      throw SingularQuotientError("divide_odd: denominator vanishes at interior point " +
                                      std::to_string(j),
                                  j);
    f(j) = g(j) / h(j);
  }
  const Vec dg = d1_ * g;
  const Vec dh = d1_ * h;
  const double dscale = dh.cwiseAbs().maxCoeff();
  for (int j : {0, n_}) {
    if (!(std::abs(dh(j)) > 1e-14 * dscale) || dscale == 0.0)
      throw SingularQuotientError("divide_odd: denominator derivative vanishes at endpoint " +
                                      std::to_string(j),
                                  j);
    f(j) = dg(j) / dh(j);
  }
  return f;
}

double SpectralGrid::eval_even(const Vec& coeffs, double tau) const {
  double s = 0.0;
  for (int k = 0; k <= n_; ++k) s += coeffs(k) * std::cos(k * pi * tau / length_);
  return s;
}

double SpectralGrid::eval_odd(const Vec& coeffs, double tau) const {
  double s = 0.0;
  for (int k = 1; k < n_; ++k) s += coeffs(k) * std::sin(k * pi * tau / length_);
  return s;
}

double SpectralGrid::eval_even_derivative(const Vec& coeffs, double tau) const {
  double s = 0.0;
  for (int k = 1; k < n_; ++k) s -= coeffs(k) * (k * pi / length_) * std::sin(k * pi * tau / length_);
  return s;
}

double SpectralGrid::eval_odd_derivative(const Vec& coeffs, double tau) const {
  double s = 0.0;
  for (int k = 1; k < n_; ++k) s += coeffs(k) * (k * pi / length_) * std::cos(k * pi * tau / length_);
  return s;
}

}  // namespace wpflow
