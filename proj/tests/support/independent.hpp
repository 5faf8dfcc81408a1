#pragma once

// Reference computations that share no code with the library's numeric
// oracle: direct sums and Boost quadrature instead of the FFT, phase unwrapping instead of
// root counting, and evaluation at sample points instead of root forms.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <gtest/gtest.h>

#include "tk/rational.hpp"

namespace tk::testing {

using Fn = std::function<Complex(Complex)>;

inline Complex circle_point(int k, int count, double offset = 0.37) {
  return std::polar(1.0, 2.0 * std::numbers::pi * (k + offset) / count);
}

/// n-th Fourier coefficient of f on the circle by a direct trapezoidal sum on
/// a fixed grid. Adaptive refinement is avoided on purpose: coarse grids alias
/// z^-n onto z^0 and then agree with each other.
inline Complex fourier_coefficient(const Fn& f, int n, int samples = 4096) {
  Complex sum{};
  for (int k = 0; k < samples; ++k) {
    const Complex z = circle_point(k, samples);
    sum += f(z) * std::pow(z, -n);
  }
  return sum / static_cast<double>(samples);
}

/// Winding of f about 0 by unwrapping its phase on the circle.
inline int phase_winding(const Fn& f, int samples = 4096) {
  double total = 0.0;
  Complex prev = f(circle_point(0, samples, 0.0));
  for (int k = 1; k <= samples; ++k) {
    const Complex cur = f(circle_point(k % samples, samples, 0.0));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Normalized L^2(T) norm.
inline double circle_norm(const Fn& f, int samples = 8192) {
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) sum += std::norm(f(circle_point(k, samples)));
  return std::sqrt(sum / samples);
}

/// Unweighted L^2(R) norm by a doubly exponential rule on the whole line.
inline double line_norm(const Fn& f) {
  boost::math::quadrature::sinh_sinh<double> rule;
  return std::sqrt(rule.integrate([&](double s) {
    const double v = std::norm(f(Complex(s)));
    return std::isfinite(v) ? v : 0.0;  // far tails overflow the root form
  }));
}

/// max |a(z) - b(z)| over circle samples, relative to 1 + |b(z)|.
inline double circle_distance(const Fn& a, const Fn& b, int samples = 64) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex z = circle_point(k, samples);
    worst = std::max(worst, std::abs(a(z) - b(z)) / (1.0 + std::abs(b(z))));
  }
  return worst;
}

inline Fn as_fn(const RationalFunction& r) {
  return [r](Complex z) { return r(z); };
}

/// Membership of f in ker T_s: the nonnegative Fourier coefficients of s f vanish.
inline double kernel_residual(const RationalFunction& s, const RationalFunction& f, int max_index) {
  double worst = 0.0;
  for (int n = 0; n <= max_index; ++n)
    worst = std::max(worst, std::abs(fourier_coefficient([&](Complex z) { return s(z) * f(z); }, n)));
  return worst;
}

/// Distance from f to span(basis) in L^2(T) after least squares on circle samples.
inline double span_distance(const RationalFunction& f, const std::vector<RationalFunction>& basis,
                            int samples = 256) {
  Eigen::MatrixXcd a(samples, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXcd y(samples);
  for (int k = 0; k < samples; ++k) {
    const Complex z = circle_point(k, samples);
    y(k) = f(z);
    for (std::size_t j = 0; j < basis.size(); ++j) a(k, static_cast<Eigen::Index>(j)) = basis[j](z);
  }
  if (basis.empty()) return y.norm() / std::sqrt(samples);
  const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(y);
  return (a * x - y).norm() / std::max(y.norm(), 1e-300);
}

inline ::testing::AssertionResult same_function(const RationalFunction& a, const RationalFunction& b,
                                                double tol = 1e-10) {
  const double d = circle_distance(as_fn(a), as_fn(b));
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "functions differ on the circle by " << d;
}

/// Equal up to a nonzero constant factor.
inline ::testing::AssertionResult proportional(const RationalFunction& a, const RationalFunction& b,
                                               double tol = 1e-10) {
  const Complex z0 = circle_point(3, 64);
  if (std::abs(b(z0)) == 0.0) return ::testing::AssertionFailure() << "reference vanishes at sample";
  const Complex c = a(z0) / b(z0);
  return same_function(a, b * c, tol);
}

}  // namespace tk::testing
