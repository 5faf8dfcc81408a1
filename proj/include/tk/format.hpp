#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "tk/rational.hpp"

namespace tk {

inline std::string format_real(double x, int digits = 12) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Display form of a scalar: "1.5", "-2i", "(0.5-0.25i)". Parts below 1e-13
/// of the modulus are dropped.
inline std::string format_complex(Complex c, int digits = 12) {
  const double mag = std::abs(c);
  double re = std::abs(c.real()) <= 1e-13 * mag ? 0.0 : c.real();
  double im = std::abs(c.imag()) <= 1e-13 * mag ? 0.0 : c.imag();
  if (im == 0.0) return format_real(re, digits);
  if (re == 0.0) return format_real(im, digits) + "i";
  std::string s = "(" + format_real(re, digits);
  s += im < 0 ? "-" : "+";
  return s + format_real(std::abs(im), digits) + "i)";
}

/// Ascending powers, e.g. "1-0.5*z+2i*z^3".
inline std::string format_polynomial(const ComplexPolynomial& p, const char* var = "z", int digits = 12) {
  if (p.is_zero()) return "0";
  std::string out;
  const double scale = p.l1_norm();
  for (int k = 0; k <= p.degree(); ++k) {
    const Complex c = p.coeff(k);
    if (std::abs(c) <= 1e-15 * scale) continue;
    std::string coef = format_complex(c, digits);
    std::string term;
    if (k == 0) {
      term = coef;
    } else {
      const std::string power = k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k);
      if (coef == "1") term = power;
      else if (coef == "-1") term = "-" + power;
      else term = coef + "*" + power;
    }
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

inline int term_count(const ComplexPolynomial& p) {
  int n = 0;
  for (const auto& c : p.coeffs())
    if (c != Complex{}) ++n;
  return n;
}

/// Canonical printed form of a reduced rational function.
inline std::string format_rational(const RationalFunction& r, const char* var = "z", int digits = 12) {
  if (r.is_zero()) return "0";
  const std::string num = format_polynomial(r.numerator(), var, digits);
  if (r.denominator_degree() == 0) return num;
  const std::string n = term_count(r.numerator()) > 1 ? "(" + num + ")" : num;
  return n + "/(" + format_polynomial(r.denominator(), var, digits) + ")";
}

}  // namespace tk
