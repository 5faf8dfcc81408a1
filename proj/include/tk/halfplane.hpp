#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "tk/error.hpp"
#include "tk/multipliers.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

namespace tk {

/// A rational function of the upper half-plane variable s.
struct HalfPlaneRational {
  RationalFunction value;

  Complex operator()(Complex s) const { return value(s); }
};

namespace halfplane {

inline bool is_real_point(Complex r) {
  return std::abs(r.imag()) <= tol::circle * std::max(1.0, std::abs(r));
}

inline bool has_real_pole(const RationalFunction& f) {
  for (const auto& p : f.poles())
    if (is_real_point(p.value)) return true;
  return false;
}

/// Square-integrable on the line: no real poles and strict decay at infinity.
inline bool in_l2_line(const HalfPlaneRational& f) {
  return f.value.is_zero() ||
         (!has_real_pole(f.value) && f.value.numerator_degree() < f.value.denominator_degree());
}

/// H^2 of the upper half-plane: all poles in the open lower half-plane, strict decay.
inline bool in_h2_upper(const HalfPlaneRational& f) {
  if (f.value.is_zero()) return true;
  for (const auto& p : f.value.poles())
    if (p.value.imag() >= -tol::circle * std::max(1.0, std::abs(p.value))) return false;
  return f.value.numerator_degree() < f.value.denominator_degree();
}

/// f(i(1 - z)/(1 + z)) as a reduced rational function of z.
inline RationalFunction compose_cayley(const RationalFunction& f) {
  if (f.is_zero()) return {};
  const Complex I(0.0, 1.0);
  Complex gain = f.gain();
  std::vector<Root> zeros, poles;
  int power = 0;  // exponent of (1 + z)^{-1}
  // s - r = ((i - r) - (i + r) z) / (1 + z)
  auto transfer = [&](const Root& r, std::vector<Root>& into, int sign) {
    power += sign * r.multiplicity;
    const Complex a = I + r.value;
    if (std::abs(a) < 1e-14) {
      gain *= std::pow(2.0 * I, sign * r.multiplicity);
      return;
    }
    gain *= std::pow(-a, sign * r.multiplicity);
    into.push_back({(I - r.value) / a, r.multiplicity});
  };
  for (const auto& r : f.zeros()) transfer(r, zeros, 1);
  for (const auto& r : f.poles()) transfer(r, poles, -1);
  if (power > 0) poles.push_back({Complex(-1.0), power});
  if (power < 0) zeros.push_back({Complex(-1.0), -power});
  return RationalFunction::from_roots(gain, std::move(zeros), std::move(poles));
}

/// Inverse substitution z = (i - s)/(i + s).
inline RationalFunction compose_inverse_cayley(const RationalFunction& f) {
  if (f.is_zero()) return {};
  const Complex I(0.0, 1.0);
  Complex gain = f.gain();
  std::vector<Root> zeros, poles;
  int power = 0;  // exponent of (i + s)^{-1}
  // z - a = (i(1 - a) - (1 + a) s) / (i + s)
  auto transfer = [&](const Root& r, std::vector<Root>& into, int sign) {
    power += sign * r.multiplicity;
    const Complex b = 1.0 + r.value;
    if (std::abs(b) < 1e-14) {
      gain *= std::pow(2.0 * I, sign * r.multiplicity);
      return;
    }
    gain *= std::pow(-b, sign * r.multiplicity);
    into.push_back({I * (1.0 - r.value) / b, r.multiplicity});
  };
  for (const auto& r : f.zeros()) transfer(r, zeros, 1);
  for (const auto& r : f.poles()) transfer(r, poles, -1);
  if (power > 0) poles.push_back({-I, power});
  if (power < 0) zeros.push_back({-I, -power});
  return RationalFunction::from_roots(gain, std::move(zeros), std::move(poles));
}

/// Complex conjugation on the real line: conjugate every coefficient.
inline HalfPlaneRational line_conjugate(const HalfPlaneRational& f) {
  if (f.value.is_zero()) return f;
  std::vector<Root> zeros, poles;
  for (const auto& r : f.value.zeros()) zeros.push_back({std::conj(r.value), r.multiplicity});
  for (const auto& r : f.value.poles()) poles.push_back({std::conj(r.value), r.multiplicity});
  return {RationalFunction::from_roots(std::conj(f.value.gain()), std::move(zeros), std::move(poles))};
}

}  // namespace halfplane

/// V_2 f(z) = 2 sqrt(pi) (1 + z)^{-1} f(i(1 - z)/(1 + z)), an isometry
/// L^2(R) -> L^2(T, dm) carrying H^2 of the upper half-plane onto H^2 of the disc.
inline RationalFunction cayley_function(const HalfPlaneRational& f) {
  if (f.value.is_zero()) return {};
  if (!halfplane::in_l2_line(f))
    throw Error(ErrorCode::NotSquareIntegrable, "real pole or insufficient decay at infinity");
  const auto weight = RationalFunction::from_roots(2.0 * std::sqrt(std::numbers::pi), {},
                                                   {{Complex(-1.0), 1}});
  return weight * halfplane::compose_cayley(f.value);
}

/// Unweighted transfer of a bounded symbol: g(i(1 - z)/(1 + z)).
inline ToeplitzSymbol cayley_symbol(const HalfPlaneRational& g) {
  if (halfplane::has_real_pole(g.value) ||
      (!g.value.is_zero() && g.value.numerator_degree() > g.value.denominator_degree()))
    throw Error(ErrorCode::UnboundedSymbol, "symbol is unbounded on the real line");
  return ToeplitzSymbol(halfplane::compose_cayley(g.value));
}

/// Multiplier test on the half-plane, performed by transferring w, g, h to the disc.
inline bool halfplane_multiplier_test(const HalfPlaneRational& w, const HalfPlaneRational& g,
                                      const HalfPlaneRational& h) {
  return is_multiplier(halfplane::compose_cayley(w.value), cayley_symbol(g), cayley_symbol(h));
}

/// Line and circle L^2 norms of f and V_2 f on one midpoint grid of the circle
/// (s = tan(t/2)), so that no truncation of the line is needed.
struct CayleyNorms {
  double line = 0.0;
  double circle = 0.0;
};

inline CayleyNorms cayley_norms(const HalfPlaneRational& f, int samples = 4096) {
  const auto v = cayley_function(f);
  double line = 0.0, circle = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = -std::numbers::pi + (k + 0.5) * 2.0 * std::numbers::pi / samples;
    const double s = std::tan(t / 2.0);
    const double sec = 1.0 / std::cos(t / 2.0);
    line += std::numbers::pi * std::norm(f(Complex(s))) * sec * sec;
    circle += std::norm(v(std::polar(1.0, t)));
  }
  return {std::sqrt(line / samples), std::sqrt(circle / samples)};
}

}  // namespace tk
