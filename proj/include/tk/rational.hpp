#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "tk/error.hpp"
#include "tk/polynomial.hpp"

namespace tk {

enum class Region { Inside, OnCircle, Outside };

inline Region region_of(Complex z) {
  const double r = std::abs(z);
  if (r < 1.0 - tol::circle) return Region::Inside;
  if (r > 1.0 + tol::circle) return Region::Outside;
  return Region::OnCircle;
}

struct RootClassification {
  std::vector<Root> inside;
  std::vector<Root> on_circle;
  std::vector<Root> outside;
};

inline RootClassification classify_roots(std::span<const Root> roots) {
  RootClassification out;
  for (const auto& r : roots) {
    switch (region_of(r.value)) {
      case Region::Inside: out.inside.push_back(r); break;
      case Region::OnCircle: out.on_circle.push_back(r); break;
      case Region::Outside: out.outside.push_back(r); break;
    }
  }
  return out;
}

inline int count_in(std::span<const Root> roots, Region where) {
  int n = 0;
  for (const auto& r : roots)
    if (region_of(r.value) == where) n += r.multiplicity;
  return n;
}

/// Reduced quotient gain * prod(z - zeros) / prod(z - poles). The denominator
/// is monic; the scalar lives in the numerator. Zeros and poles never match
/// within the root tolerance. The zero function has gain 0 and no roots.
class RationalFunction {
 public:
  RationalFunction() : den_(ComplexPolynomial::constant(1.0)) {}

  static RationalFunction constant(Complex c) {
    return from_roots(c, {}, {});
  }

  /// c * z^k for any integer k.
  static RationalFunction monomial(int k, Complex c = 1.0) {
    if (c == Complex{}) return {};
    std::vector<Root> zeros, poles;
    if (k > 0) zeros.push_back({Complex{}, k});
    if (k < 0) poles.push_back({Complex{}, -k});
    return from_roots(c, std::move(zeros), std::move(poles));
  }

  static RationalFunction z() { return monomial(1); }

  static RationalFunction from_polys(const ComplexPolynomial& num, const ComplexPolynomial& den) {
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "denominator is the zero polynomial");
    if (num.is_zero()) return {};
    auto zeros = poly_roots(num);
    auto poles = poly_roots(den);
    const Complex gain = num.leading() / den.leading();
    RationalFunction out;
    out.gain_ = gain;
    out.zeros_ = std::move(zeros);
    out.poles_ = std::move(poles);
    if (out.cancel()) {
      out.rebuild();
    } else {
      out.num_ = num * (1.0 / den.leading());
      out.den_ = den * (1.0 / den.leading());
    }
    return out;
  }

  static RationalFunction polynomial(const ComplexPolynomial& p) {
    return from_polys(p, ComplexPolynomial::constant(1.0));
  }

  static RationalFunction from_roots(Complex gain, std::vector<Root> zeros, std::vector<Root> poles) {
    RationalFunction out;
    if (gain == Complex{}) return out;
    out.gain_ = gain;
    out.zeros_ = merge_roots(std::move(zeros));
    out.poles_ = merge_roots(std::move(poles));
    out.cancel();
    out.rebuild();
    return out;
  }

  bool is_zero() const noexcept { return gain_ == Complex{}; }
  Complex gain() const noexcept { return gain_; }
  const std::vector<Root>& zeros() const noexcept { return zeros_; }
  const std::vector<Root>& poles() const noexcept { return poles_; }
  const ComplexPolynomial& numerator() const noexcept { return num_; }
  const ComplexPolynomial& denominator() const noexcept { return den_; }
  int numerator_degree() const noexcept { return is_zero() ? 0 : num_.degree(); }
  int denominator_degree() const noexcept { return den_.degree(); }
  /// deg(numerator) + deg(denominator)
  int total_degree() const noexcept { return numerator_degree() + denominator_degree(); }
  bool is_constant() const noexcept { return zeros_.empty() && poles_.empty(); }

  Complex operator()(Complex z) const { return num_(z) / den_(z); }

  /// Exponent of z in the reduced form: multiplicity of the zero at 0 minus that of the pole at 0.
  int order_at_zero() const {
    int k = 0;
    for (const auto& r : zeros_)
      if (r.value == Complex{}) k += r.multiplicity;
    for (const auto& r : poles_)
      if (r.value == Complex{}) k -= r.multiplicity;
    return k;
  }

  bool has_pole_in(Region where) const { return count_in(poles_, where) > 0; }
  bool has_zero_in(Region where) const { return count_in(zeros_, where) > 0; }
  /// Closed disc = inside or on the circle.
  bool has_pole_in_closed_disc() const { return has_pole_in(Region::Inside) || has_pole_in(Region::OnCircle); }
  bool has_zero_in_closed_disc() const { return has_zero_in(Region::Inside) || has_zero_in(Region::OnCircle); }

  RationalFunction reciprocal() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "reciprocal of the zero function");
    return from_roots(1.0 / gain_, poles_, zeros_);
  }

  RationalFunction pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    RationalFunction out = constant(1.0);
    RationalFunction base = *this;
    while (k > 0) {
      if (k & 1) out = out * base;
      base = base * base;
      k >>= 1;
    }
    return out;
  }

  /// Power-series coefficients at the origin, indices 0..n-1. Requires no pole at 0.
  std::vector<Complex> taylor(std::size_t n) const {
    std::vector<Complex> out(n, Complex{});
    if (is_zero()) return out;
    const auto& a = num_.coeffs();
    const auto& b = den_.coeffs();
    if (b.front() == Complex{})
      throw Error(ErrorCode::PreconditionViolation, "taylor expansion needs analyticity at 0");
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc = k < a.size() ? a[k] : Complex{};
      for (std::size_t j = 1; j < b.size() && j <= k; ++j) acc -= b[j] * out[k - j];
      out[k] = acc / b.front();
    }
    return out;
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto zeros = a.zeros_;
    zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
    auto poles = a.poles_;
    poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
    return from_roots(a.gain_ * b.gain_, std::move(zeros), std::move(poles));
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.reciprocal();
  }
  friend RationalFunction operator*(const RationalFunction& a, Complex s) {
    if (s == Complex{} || a.is_zero()) return {};
    return from_roots(a.gain_ * s, a.zeros_, a.poles_);
  }
  friend RationalFunction operator*(Complex s, const RationalFunction& a) { return a * s; }
  friend RationalFunction operator-(const RationalFunction& a) { return a * Complex(-1.0); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Common denominator = lcm of the two monic denominators, tracked by roots.
    std::vector<Root> common = a.poles_;
    std::vector<Root> extra_a, extra_b;  // factors each side is missing
    for (const auto& p : b.poles_) {
      bool found = false;
      for (auto& c : common) {
        if (roots_match(c.value, p.value)) {
          found = true;
          if (p.multiplicity > c.multiplicity) {
            extra_a.push_back({c.value, p.multiplicity - c.multiplicity});
            c.multiplicity = p.multiplicity;
          } else if (c.multiplicity > p.multiplicity) {
            extra_b.push_back({c.value, c.multiplicity - p.multiplicity});
          }
          break;
        }
      }
      if (!found) {
        common.push_back(p);
        extra_a.push_back(p);
      }
    }
    for (const auto& p : a.poles_) {
      bool found = false;
      for (const auto& q : b.poles_)
        if (roots_match(p.value, q.value)) found = true;
      if (!found) extra_b.push_back(p);
    }
    const auto num = a.num_ * ComplexPolynomial::from_roots(extra_a) +
                     b.num_ * ComplexPolynomial::from_roots(extra_b);
    const double scale = (a.num_ * ComplexPolynomial::from_roots(extra_a)).l1_norm() +
                         (b.num_ * ComplexPolynomial::from_roots(extra_b)).l1_norm();
    auto trimmed = trim(num, scale);
    if (trimmed.is_zero()) return {};
    return from_polys(trimmed, ComplexPolynomial::from_roots(common));
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }

 private:
  static ComplexPolynomial trim(const ComplexPolynomial& p, double scale) {
    std::vector<Complex> c = p.coeffs();
    for (auto& x : c)
      if (std::abs(x) <= 1e-14 * scale) x = Complex{};
    return ComplexPolynomial(std::move(c));
  }

  static std::vector<Root> merge_roots(std::vector<Root> in) {
    std::vector<Root> out;
    for (auto& r : in) {
      if (r.multiplicity <= 0) continue;
      if (std::abs(r.value) < tol::zero_snap) r.value = Complex{};
      bool merged = false;
      for (auto& o : out) {
        if (roots_match(o.value, r.value)) {
          o.multiplicity += r.multiplicity;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), root_less);
    return out;
  }

  // Cancels matching zeros and poles; true if anything cancelled.
  bool cancel() {
    bool any = false;
    for (auto& z : zeros_) {
      for (auto& p : poles_) {
        if (z.multiplicity == 0 || p.multiplicity == 0) continue;
        if (roots_match(z.value, p.value)) {
          const int m = std::min(z.multiplicity, p.multiplicity);
          z.multiplicity -= m;
          p.multiplicity -= m;
          any = true;
        }
      }
    }
    std::erase_if(zeros_, [](const Root& r) { return r.multiplicity == 0; });
    std::erase_if(poles_, [](const Root& r) { return r.multiplicity == 0; });
    return any;
  }

  void rebuild() {
    num_ = ComplexPolynomial::from_roots(zeros_, gain_);
    den_ = ComplexPolynomial::from_roots(poles_);
  }

  Complex gain_{};
  std::vector<Root> zeros_;
  std::vector<Root> poles_;
  ComplexPolynomial num_;
  ComplexPolynomial den_;
};

/// The rational function equal to conj(r(z)) at every point of the unit circle:
/// sum conj(c_j) z^{-j}, kept in reduced root form.
inline RationalFunction circle_conjugate(const RationalFunction& r) {
  if (r.is_zero()) return {};
  Complex gain = std::conj(r.gain());
  std::vector<Root> zeros, poles;
  int z_power = 0;
  // conj(z - a) = (1 - conj(a) z) / z = -conj(a) (z - 1/conj(a)) / z on the circle
  for (const auto& a : r.zeros()) {
    z_power -= a.multiplicity;
    if (a.value == Complex{}) continue;
    gain *= std::pow(-std::conj(a.value), a.multiplicity);
    zeros.push_back({1.0 / std::conj(a.value), a.multiplicity});
  }
  for (const auto& b : r.poles()) {
    z_power += b.multiplicity;
    if (b.value == Complex{}) continue;
    gain /= std::pow(-std::conj(b.value), b.multiplicity);
    poles.push_back({1.0 / std::conj(b.value), b.multiplicity});
  }
  if (z_power > 0) zeros.push_back({Complex{}, z_power});
  if (z_power < 0) poles.push_back({Complex{}, -z_power});
  return RationalFunction::from_roots(gain, std::move(zeros), std::move(poles));
}

/// Zeros and poles lying close to the circle band edge, where the
/// inside/on/outside decision is sensitive to rounding.
inline std::vector<std::string> classification_warnings(const RationalFunction& r) {
  std::vector<std::string> out;
  auto scan = [&](const std::vector<Root>& roots, const char* kind) {
    for (const auto& x : roots) {
      const double gap = std::abs(std::abs(x.value) - 1.0);
      if (gap >= tol::circle && gap < tol::warn_band)
        out.push_back(std::string("ClassificationWarning: ") + kind + " at distance " +
                      std::to_string(gap) + " from the unit circle");
    }
  };
  scan(r.zeros(), "zero");
  scan(r.poles(), "pole");
  return out;
}

}  // namespace tk
