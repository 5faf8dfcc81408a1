#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "tk/error.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

namespace tk {

/// constant * prod ((z - a) / (1 - conj(a) z))^m, every zero in the open disc.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;

  BlaschkeProduct(std::vector<Root> zeros, Complex constant = 1.0) : constant_(constant) {
    if (std::abs(std::abs(constant) - 1.0) > 1e-12)
      throw Error(ErrorCode::PreconditionViolation, "Blaschke constant must be unimodular");
    for (auto& r : zeros) {
      if (r.multiplicity <= 0) continue;
      if (std::abs(r.value) >= 1.0 - tol::circle)
        throw Error(ErrorCode::PreconditionViolation, "Blaschke zero must lie in the open unit disc");
      if (std::abs(r.value) < tol::zero_snap) r.value = Complex{};
      bool merged = false;
      for (auto& z : zeros_)
        if (roots_match(z.value, r.value)) {
          z.multiplicity += r.multiplicity;
          merged = true;
        }
      if (!merged) zeros_.push_back(r);
    }
    std::sort(zeros_.begin(), zeros_.end(), root_less);
  }

  /// z^n
  static BlaschkeProduct power_of_z(int n) {
    if (n <= 0) return {};
    return BlaschkeProduct({{Complex{}, n}});
  }

  Complex constant() const noexcept { return constant_; }
  const std::vector<Root>& zeros() const noexcept { return zeros_; }
  int degree() const noexcept { return total_multiplicity(zeros_); }

  RationalFunction to_rational() const {
    Complex gain = constant_;
    std::vector<Root> poles;
    for (const auto& a : zeros_) {
      if (a.value == Complex{}) continue;
      // 1 - conj(a) z = -conj(a) (z - 1/conj(a))
      gain /= std::pow(-std::conj(a.value), a.multiplicity);
      poles.push_back({1.0 / std::conj(a.value), a.multiplicity});
    }
    return RationalFunction::from_roots(gain, zeros_, std::move(poles));
  }

  Complex operator()(Complex z) const { return to_rational()(z); }

  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    auto zeros = a.zeros_;
    zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(std::move(zeros), a.constant_ * b.constant_);
  }

 private:
  Complex constant_{1.0};
  std::vector<Root> zeros_;
};

/// Recognizes a rational function as a finite Blaschke product: zeros in the
/// open disc, poles at their reflections, unimodular on 64 circle samples.
inline std::optional<BlaschkeProduct> as_blaschke(const RationalFunction& r) {
  if (r.is_zero()) return std::nullopt;
  if (r.has_zero_in(Region::OnCircle) || r.has_zero_in(Region::Outside)) return std::nullopt;
  BlaschkeProduct unit(r.zeros());
  const RationalFunction ratio = r / unit.to_rational();
  if (!ratio.is_constant()) return std::nullopt;
  const Complex c = ratio.gain();
  if (std::abs(std::abs(c) - 1.0) > 1e-9) return std::nullopt;
  BlaschkeProduct out(r.zeros(), c / std::abs(c));
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 64.0);
    if (std::abs(std::abs(r(z)) - 1.0) > 1e-9) return std::nullopt;
  }
  return out;
}

/// theta / alpha is analytic: every zero of alpha appears in theta with at
/// least the same multiplicity.
inline bool blaschke_divides(const BlaschkeProduct& alpha, const BlaschkeProduct& theta) {
  for (const auto& a : alpha.zeros()) {
    int available = 0;
    for (const auto& t : theta.zeros())
      if (roots_match(a.value, t.value)) available += t.multiplicity;
    if (available < a.multiplicity) return false;
  }
  return true;
}

struct InnerOuterFactorization {
  BlaschkeProduct inner;
  RationalFunction outer;
};

/// f = inner * outer. Circle zeros go to the outer factor; the outer factor is
/// normalized so that outer(0) is real and positive.
inline InnerOuterFactorization inner_outer(const RationalFunction& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroFunction, "inner-outer factorization of 0");
  if (f.has_pole_in_closed_disc())
    throw Error(ErrorCode::NotInHardySpace, "function has a pole in the closed unit disc");
  std::vector<Root> inside;
  for (const auto& r : f.zeros())
    if (region_of(r.value) == Region::Inside) inside.push_back(r);
  const BlaschkeProduct unit(inside);
  RationalFunction outer = f / unit.to_rational();
  const Complex at0 = outer(Complex{});
  const Complex phase = at0 / std::abs(at0);
  outer = outer * (1.0 / phase);
  return {BlaschkeProduct(inside, phase), outer};
}

/// g = minus * z^index * plus^{-1}
struct WienerHopfFactorization {
  RationalFunction minus;
  int index = 0;
  RationalFunction plus;

  RationalFunction reconstruct() const {
    return minus * RationalFunction::monomial(index) / plus;
  }
};

/// plus collects the exterior zeros and poles with plus(0) = 1; minus collects
/// the interior ones written in powers of 1/z, so minus(inf) is finite and nonzero.
inline WienerHopfFactorization wiener_hopf(const ToeplitzSymbol& s) {
  s.require_invertible();
  const auto& g = s.value();
  Complex gain = g.gain();
  std::vector<Root> plus_zeros, plus_poles, minus_zeros, minus_poles;
  int index = 0;
  int inner_zero_count = 0, inner_pole_count = 0;
  for (const auto& a : g.zeros()) {
    if (region_of(a.value) == Region::Inside) {
      index += a.multiplicity;
      inner_zero_count += a.multiplicity;
      if (a.value != Complex{}) minus_zeros.push_back(a);
      else inner_zero_count -= a.multiplicity;
    } else {
      // (z - a) = -a (1 - z/a): the factor (1 - z/a) belongs to plus^{-1}
      gain *= std::pow(-a.value, a.multiplicity);
      plus_poles.push_back(a);
    }
  }
  for (const auto& b : g.poles()) {
    if (region_of(b.value) == Region::Inside) {
      index -= b.multiplicity;
      inner_pole_count += b.multiplicity;
      if (b.value != Complex{}) minus_poles.push_back(b);
      else inner_pole_count -= b.multiplicity;
    } else {
      gain /= std::pow(-b.value, b.multiplicity);
      plus_zeros.push_back(b);
    }
  }
  // (z - a)/z per interior nonzero zero, z/(z - b) per interior nonzero pole.
  if (inner_pole_count > 0) minus_zeros.push_back({Complex{}, inner_pole_count});
  if (inner_zero_count > 0) minus_poles.push_back({Complex{}, inner_zero_count});
  auto minus = RationalFunction::from_roots(gain, std::move(minus_zeros), std::move(minus_poles));

  Complex plus_gain = 1.0;
  for (const auto& b : plus_zeros) plus_gain /= std::pow(-b.value, b.multiplicity);
  for (const auto& a : plus_poles) plus_gain *= std::pow(-a.value, a.multiplicity);
  auto plus = RationalFunction::from_roots(plus_gain, std::move(plus_zeros), std::move(plus_poles));
  return {std::move(minus), index, std::move(plus)};
}

}  // namespace tk
