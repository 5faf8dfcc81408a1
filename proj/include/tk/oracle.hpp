#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "tk/error.hpp"
#include "tk/kernels.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

namespace tk::oracle {

/// Samples of a function at the M-th roots of unity.
struct BoundarySampling {
  std::size_t sample_count = 0;
  std::vector<Complex> values;
};

inline BoundarySampling sample_circle(const RationalFunction& f, std::size_t m) {
  BoundarySampling out{m, std::vector<Complex>(m)};
  for (std::size_t k = 0; k < m; ++k)
    out.values[k] = f(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m)));
  return out;
}

/// Fourier coefficients c_{-N}..c_{N}.
struct FourierCoefficients {
  int max_index = 0;
  std::size_t sample_count = 0;
  std::vector<Complex> values;

  Complex at(int n) const {
    if (n < -max_index || n > max_index) return {};
    return values[static_cast<std::size_t>(n + max_index)];
  }
};

namespace detail {
// Slowest geometric decay rate among the poles (closer to 1 = slower).
inline double decay_rate(const RationalFunction& f) {
  double rho = 0.0;
  for (const auto& p : f.poles()) {
    const double r = std::abs(p.value);
    if (r == 0.0) continue;
    rho = std::max(rho, r < 1.0 ? r : 1.0 / r);
  }
  return rho;
}
}  // namespace detail

inline FourierCoefficients fourier_coefficients(const RationalFunction& f, int max_index,
                                                std::size_t min_samples = 256) {
  if (f.has_pole_in(Region::OnCircle))
    throw Error(ErrorCode::PoleOnCircle, "Fourier coefficients need a function bounded on the circle");
  std::size_t m = std::max<std::size_t>({min_samples, 4 * static_cast<std::size_t>(max_index) + 4});
  const double rho = detail::decay_rate(f);
  if (rho > 0.0) {
    const double needed = 2.0 * static_cast<double>(max_index) + 40.0 / -std::log(rho);
    m = std::max<std::size_t>(m, static_cast<std::size_t>(std::min(needed, double(1 << 20))));
  }
  m = std::bit_ceil(m);
  const auto samples = sample_circle(f, m);
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, samples.values);
  FourierCoefficients out{max_index, m, std::vector<Complex>(2 * static_cast<std::size_t>(max_index) + 1)};
  const double scale = 1.0 / static_cast<double>(m);
  for (int n = -max_index; n <= max_index; ++n) {
    const std::size_t idx = n >= 0 ? static_cast<std::size_t>(n) : m - static_cast<std::size_t>(-n);
    out.values[static_cast<std::size_t>(n + max_index)] = spectrum[idx] * scale;
  }
  return out;
}

/// Argument-principle winding number of a circle-invertible function.
inline int quadrature_winding(const RationalFunction& f, int samples = 1024) {
  double total = 0.0;
  Complex prev = f(Complex(1.0));
  for (int k = 1; k <= samples; ++k) {
    const Complex cur = f(std::polar(1.0, 2.0 * std::numbers::pi * k / samples));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Orthonormal columns of coefficient vectors (degrees 0..degree_cap).
struct NumericSubspace {
  int degree_cap = 0;
  Eigen::MatrixXcd basis_matrix;
  std::vector<double> singular_values;  // of the truncated operator, descending
  double gap_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::string> warnings;

  int dimension() const { return static_cast<int>(basis_matrix.cols()); }
};

/// 4 deg + 16, raised until the slowest zero/pole-induced geometric decay has
/// fallen below e^-30 (bounded at 512; closer roots get a ResolutionWarning).
inline int default_degree_cap(const ToeplitzSymbol& s) {
  const auto& f = s.value();
  double rho = 0.0;
  for (const auto* roots : {&f.zeros(), &f.poles()})
    for (const auto& r : *roots) {
      const double m = std::abs(r.value);
      if (m > 0.0 && std::abs(m - 1.0) > tol::circle) rho = std::max(rho, m < 1.0 ? m : 1.0 / m);
    }
  int cap = 4 * f.total_degree() + 16;
  if (rho > 0.0) cap = std::max(cap, f.total_degree() + static_cast<int>(std::ceil(30.0 / -std::log(rho))));
  return std::min(cap, 512);
}

inline std::vector<std::string> resolution_warnings(const RationalFunction& f) {
  std::vector<std::string> out;
  auto scan = [&](const std::vector<Root>& roots) {
    for (const auto& r : roots)
      if (std::abs(std::abs(r.value) - 1.0) < 0.05) {
        out.push_back("ResolutionWarning: zero/pole within 0.05 of the unit circle; degree cap may under-resolve");
        return;
      }
  };
  scan(f.zeros());
  scan(f.poles());
  if (out.size() > 1) out.resize(1);
  return out;
}

/// Null space of the tall truncated map f -> (s f)_{0..R} over polynomials of
/// degree <= degree_cap, R = degree_cap + deg num + deg den.
inline NumericSubspace numeric_kernel(const ToeplitzSymbol& s, int degree_cap) {
  s.require_invertible();
  const int cols = degree_cap + 1;
  const int last_row = degree_cap + s.value().numerator_degree() + s.value().denominator_degree();
  const auto c = fourier_coefficients(s.value(), std::max(degree_cap, last_row));
  Eigen::MatrixXcd a(last_row + 1, cols);
  for (int i = 0; i <= last_row; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = c.at(i - j);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  NumericSubspace out;
  out.degree_cap = degree_cap;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) >= 1e-8 * top) ++rank;
  const int nullity = cols - rank;
  out.basis_matrix = svd.matrixV().rightCols(nullity);
  if (nullity > 0 && rank > 0) {
    const double dropped = rank < sv.size() ? sv(rank) : 0.0;
    out.gap_ratio = dropped > 0.0 ? sv(rank - 1) / dropped : std::numeric_limits<double>::infinity();
  }
  out.warnings = resolution_warnings(s.value());
  return out;
}

inline NumericSubspace numeric_kernel(const ToeplitzSymbol& s) {
  return numeric_kernel(s, default_degree_cap(s));
}

/// Orthonormalized Taylor coefficient vectors of the given functions.
inline NumericSubspace subspace_of(const std::vector<RationalFunction>& functions, int degree_cap) {
  NumericSubspace out;
  out.degree_cap = degree_cap;
  const auto n = static_cast<Eigen::Index>(degree_cap + 1);
  if (functions.empty()) {
    out.basis_matrix = Eigen::MatrixXcd(n, 0);
    return out;
  }
  Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(functions.size()));
  for (std::size_t j = 0; j < functions.size(); ++j) {
    const auto t = functions[j].taylor(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) m(i, static_cast<Eigen::Index>(j)) = t[static_cast<std::size_t>(i)];
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  out.basis_matrix = svd.matrixU();
  return out;
}

struct PrincipalAngle {
  double angle = 0.0;
  bool dimension_mismatch = false;
};

/// Largest principal angle; for unequal dimensions, the angle of the smaller
/// subspace against the larger one, flagged.
inline PrincipalAngle principal_angle(const NumericSubspace& a, const NumericSubspace& b) {
  if (a.degree_cap != b.degree_cap)
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different coefficient spaces");
  PrincipalAngle out;
  out.dimension_mismatch = a.dimension() != b.dimension();
  const auto& small = a.dimension() <= b.dimension() ? a.basis_matrix : b.basis_matrix;
  const auto& large = a.dimension() <= b.dimension() ? b.basis_matrix : a.basis_matrix;
  if (small.cols() == 0) {
    out.angle = large.cols() == 0 ? 0.0 : std::numbers::pi / 2.0;
    return out;
  }
  const Eigen::MatrixXcd residual = small - large * (large.adjoint() * small);
  const Eigen::MatrixXcd cross = large.adjoint() * small;
  const double sin_max = Eigen::BDCSVD<Eigen::MatrixXcd>(residual).singularValues()(0);
  if (sin_max < 0.7) {
    out.angle = std::asin(std::min(1.0, sin_max));
  } else {
    const auto cs = Eigen::BDCSVD<Eigen::MatrixXcd>(cross).singularValues();
    out.angle = std::acos(std::clamp(cs(cs.size() - 1), 0.0, 1.0));
  }
  return out;
}

/// Oracle verdict for one symbolic kernel.
struct KernelComparison {
  int symbolic_dimension = 0;
  int numeric_dimension = 0;
  double principal_angle = 0.0;
  double gap_ratio = 0.0;
  std::vector<std::string> warnings;
};

inline KernelComparison compare_kernel(const ToeplitzKernel& k, int degree_cap) {
  const auto num = numeric_kernel(k.symbol, degree_cap);
  const auto sym = subspace_of(k.basis, degree_cap);
  return {k.dimension, num.dimension(), principal_angle(sym, num).angle, num.gap_ratio, num.warnings};
}

inline KernelComparison compare_kernel(const ToeplitzKernel& k) {
  return compare_kernel(k, default_degree_cap(k.symbol));
}

/// Largest |c_n| of f over 0 <= n <= max_index (membership in conj(H^2_0) when tiny).
inline double max_nonnegative_coefficient(const RationalFunction& f, int max_index) {
  const auto c = fourier_coefficients(f, max_index);
  double worst = 0.0;
  for (int n = 0; n <= max_index; ++n) worst = std::max(worst, std::abs(c.at(n)));
  return worst;
}

}  // namespace tk::oracle
