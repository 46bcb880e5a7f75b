#pragma once

#include <Eigen/Dense>

namespace wpflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Function class on [0, L]: even functions have f'(0) = f'(L) = 0 and are
// expanded in cos(n pi tau / L), n = 0..N; odd functions vanish at both ends
// and are expanded in sin(n pi tau / L), n = 1..N-1.
enum class Parity { Even, Odd };

// Fourier collocation grid on [0, L] with N + 1 equidistant points.
//
// All point-value arrays have length N + 1, for both parities. Odd-class
// arrays carry zeros at the two endpoints; coefficient arrays are indexed by
// mode number n = 0..N, with entries 0 and N of odd-class coefficients zero.
//
// The differentiation matrices act point-to-point:
//   c1: even -> odd (first derivative),  c2: even -> even (second),
//   d1: odd -> even (first derivative),  d2: odd -> odd (second).
// They are built by composing transform, mode-space derivative and inverse
// transform, so they are exact on every mode n <= N - 1.
class SpectralGrid {
 public:
  SpectralGrid(int n, double length);

  int n() const { return n_; }
  int size() const { return n_ + 1; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  const Vec& tau() const { return tau_; }

  const Mat& c1() const { return c1_; }
  const Mat& c2() const { return c2_; }
  const Mat& d1() const { return d1_; }
  const Mat& d2() const { return d2_; }

  Vec even_to_coeffs(const Vec& values) const;
  Vec coeffs_to_even(const Vec& coeffs) const;
  Vec odd_to_coeffs(const Vec& values) const;
  Vec coeffs_to_odd(const Vec& coeffs) const;

  Vec to_coeffs(const Vec& values, Parity parity) const;
  Vec from_coeffs(const Vec& coeffs, Parity parity) const;

  // Exact integral of the cosine interpolant, L * f~_0. On this grid this
  // coincides with the composite trapezoid rule.
  double integrate_even(const Vec& values) const;
  // Exact integral of the sine interpolant of an odd-class function.
  double integrate_odd(const Vec& values) const;
  // Antiderivative G(tau) = int_0^tau g of an odd-class g; G is even-class.
  Vec antiderivative_odd(const Vec& values) const;

  // 2/3 rule: zero all modes n > floor(2N/3).
  Vec dealias(const Vec& values, Parity parity) const;
  int dealias_cutoff() const { return (2 * n_) / 3; }

  // Zero modes with odd n. Those are exactly the components that break the
  // reflection tau -> L - tau (r even about L/2, theta-hat odd about L/2).
  Vec project_symmetric(const Vec& values, Parity parity) const;
  // Largest |coefficient| over odd n.
  double symmetry_defect(const Vec& values, Parity parity) const;

  // Pointwise g / h for odd-class g, h; endpoint values by L'Hospital using
  // d1. Throws SingularQuotientError naming the offending point index.
  Vec divide_odd(const Vec& g, const Vec& h) const;

  // Evaluate interpolants at an arbitrary tau in [0, L].
  double eval_even(const Vec& coeffs, double tau) const;
  double eval_odd(const Vec& coeffs, double tau) const;
  double eval_even_derivative(const Vec& coeffs, double tau) const;
  double eval_odd_derivative(const Vec& coeffs, double tau) const;

  bool same_as(const SpectralGrid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  void check_size(const Vec& v, const char* what) const;

  int n_;
  double length_;
  Vec tau_;
  Mat cos_;      // A
  Mat cos_inv_;  // A^{-1}
  Mat sin_;      // B (zero-padded to (N+1)x(N+1))
  Mat sin_inv_;  // B^{-1}
  Mat c1_, c2_, d1_, d2_;
};

}  // namespace wpflow
