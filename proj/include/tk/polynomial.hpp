#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tk/error.hpp"

namespace tk {

using Complex = std::complex<double>;

/// A root together with its multiplicity.
struct Root {
  Complex value;
  int multiplicity = 1;

  friend bool operator==(const Root&, const Root&) = default;
};

inline bool root_less(const Root& a, const Root& b) {
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

inline bool roots_match(Complex a, Complex b, double rel = tol::root) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Dense polynomial over complex doubles, coefficients in ascending degree.
/// The zero polynomial has an empty coefficient list.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  ComplexPolynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { normalize(); }

  static ComplexPolynomial constant(Complex c) { return ComplexPolynomial({c}); }

  static ComplexPolynomial monomial(int degree, Complex c = 1.0) {
    std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex{});
    v.back() = c;
    return ComplexPolynomial(std::move(v));
  }

  /// lead * prod (z - r)^m
  static ComplexPolynomial from_roots(std::span<const Root> roots, Complex lead = 1.0) {
    std::vector<Complex> c{lead};
    for (const auto& r : roots) {
      for (int k = 0; k < r.multiplicity; ++k) {
        std::vector<Complex> next(c.size() + 1, Complex{});
        for (std::size_t i = 0; i < c.size(); ++i) {
          next[i + 1] += c[i];
          next[i] -= r.value * c[i];
        }
        c = std::move(next);
      }
    }
    return ComplexPolynomial(std::move(c));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)]
                                                             : Complex{};
  }
  Complex leading() const { return is_zero() ? Complex{} : coeffs_.back(); }

  Complex operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  ComplexPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return ComplexPolynomial(std::move(d));
  }

  /// Sum of |c_k|; the scale used by relative tests.
  double l1_norm() const {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0,
                           [](double s, Complex c) { return s + std::abs(c); });
  }

  ComplexPolynomial conj_coeffs() const {
    std::vector<Complex> c(coeffs_);
    for (auto& x : c) x = std::conj(x);
    return ComplexPolynomial(std::move(c));
  }

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a) { return a * Complex(-1.0); }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return a + (-b);
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, Complex s) {
    std::vector<Complex> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& a) { return a * s; }

  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  }

  std::vector<Complex> coeffs_;
};

namespace detail {

// Taylor coefficient of p at c of order j, and the matching magnitude scale.
inline std::pair<double, double> taylor_residual(const ComplexPolynomial& p, Complex c, int j) {
  Complex value{};
  double scale = 0.0;
  const double ac = std::abs(c);
  const auto& cs = p.coeffs();
  for (int k = j; k <= p.degree(); ++k) {
    double binom = 1.0;
    for (int t = 0; t < j; ++t) binom = binom * (k - t) / (t + 1);
    value += cs[static_cast<std::size_t>(k)] * binom * std::pow(c, k - j);
    scale += std::abs(cs[static_cast<std::size_t>(k)]) * binom * std::pow(ac, k - j);
  }
  return {std::abs(value), scale};
}

inline bool is_multiple_root(const ComplexPolynomial& p, Complex c, int m) {
  for (int j = 0; j < m; ++j) {
    auto [v, s] = taylor_residual(p, c, j);
    if (v > 1e-9 * std::max(s, 1e-300)) return false;
  }
  return true;
}

struct Cluster {
  Complex sum{};
  int count = 0;
  Complex centroid() const { return sum / static_cast<double>(count); }
};

inline std::vector<Complex> companion_eigenvalues(const ComplexPolynomial& q) {
  const int n = q.degree();
  if (n == 1) return {-q.coeff(0) / q.coeff(1)};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = q.leading();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

}  // namespace detail

/// Roots with multiplicities, sorted by real part then imaginary part.
/// Companion-matrix eigenvalues, one Newton polish step, clustering.
inline std::vector<Root> poly_roots(const ComplexPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");

  int zero_mult = 0;
  while (p.coeff(zero_mult) == Complex{}) ++zero_mult;
  std::vector<Complex> rest(p.coeffs().begin() + zero_mult, p.coeffs().end());
  const ComplexPolynomial q(std::move(rest));

  std::vector<detail::Cluster> clusters;
  if (q.degree() >= 1) {
    const auto raw = detail::companion_eigenvalues(q);
    const auto dq = q.derivative();
    auto polish = [&](Complex r) {
      const Complex d = dq(r);
      if (std::abs(d) == 0.0) return r;
      const Complex cand = r - q(r) / d;
      const bool finite = std::isfinite(cand.real()) && std::isfinite(cand.imag());
      return finite && std::abs(q(cand)) < std::abs(q(r)) ? cand : r;
    };

    // Single-linkage groups at the wide radius. A multiple root of order m
    // splits by roughly eps^(1/m) but the group centroid stays accurate, so a
    // group is one root when the centroid passes the derivative test.
    auto link = [&](double rel) {
      std::vector<int> parent(raw.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
        return i;
      };
      for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j)
          if (roots_match(raw[i], raw[j], rel))
            parent[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
      std::vector<int> label(raw.size());
      for (std::size_t i = 0; i < raw.size(); ++i) label[i] = find(static_cast<int>(i));
      return label;
    };
    const auto wide = link(tol::cluster);
    const auto tight = link(tol::root);
    std::vector<bool> done(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (done[i]) continue;
      detail::Cluster group;
      for (std::size_t j = i; j < raw.size(); ++j)
        if (wide[j] == wide[i]) {
          group.sum += raw[j];
          ++group.count;
        }
      if (group.count == 1) {
        clusters.push_back({polish(raw[i]), 1});
        done[i] = true;
        continue;
      }
      if (detail::is_multiple_root(q, group.centroid(), group.count)) {
        clusters.push_back(group);
        for (std::size_t j = i; j < raw.size(); ++j)
          if (wide[j] == wide[i]) done[j] = true;
        continue;
      }
      for (std::size_t j = i; j < raw.size(); ++j) {
        if (done[j] || wide[j] != wide[i]) continue;
        detail::Cluster sub;
        for (std::size_t t = j; t < raw.size(); ++t)
          if (!done[t] && tight[t] == tight[j]) {
            sub.sum += raw[t];
            ++sub.count;
            done[t] = true;
          }
        if (sub.count == 1) sub.sum = polish(sub.sum);
        clusters.push_back(sub);
      }
    }
  }

  std::vector<Root> out;
  for (const auto& c : clusters) {
    const Complex v = c.centroid();
    if (std::abs(v) < tol::zero_snap)
      zero_mult += c.count;
    else
      out.push_back({v, c.count});
  }
  if (zero_mult > 0) out.push_back({Complex{}, zero_mult});
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

inline int total_multiplicity(std::span<const Root> roots) {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

}  // namespace tk
