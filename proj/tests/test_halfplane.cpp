#include <gtest/gtest.h>

#include "support/independent.hpp"
#include "tk/halfplane.hpp"
#include "tk/random.hpp"

namespace tk {
namespace {

using testing::same_function;

const Complex I(0.0, 1.0);
const double kPi = std::numbers::pi;

RationalFunction poly(std::vector<Complex> c) { return RationalFunction::polynomial(ComplexPolynomial(std::move(c))); }
HalfPlaneRational hp(RationalFunction r) { return {std::move(r)}; }

// s + c
RationalFunction shift(Complex c) { return poly({c, 1.0}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::UsageError;
}

/// Random rational in H^2 of the upper half-plane: poles in the lower
/// half-plane away from the axis, numerator degree below the denominator's.
HalfPlaneRational random_h2_upper(random::Engine& rng, int max_degree = 6) {
  std::uniform_real_distribution<double> x(-2.0, 2.0), y(0.3, 2.0);
  const int poles = random::uniform_int(rng, 1, max_degree);
  const int zeros = random::uniform_int(rng, 0, poles - 1);
  std::vector<Root> zs, ps;
  for (int k = 0; k < poles; ++k) ps.push_back({Complex(x(rng), -y(rng)), 1});
  for (int k = 0; k < zeros; ++k) zs.push_back({Complex(x(rng), (k % 2 ? 1.0 : -1.0) * y(rng)), 1});
  return hp(RationalFunction::from_roots(random::gain(rng), std::move(zs), std::move(ps)));
}

/// Random symbol bounded on the line: no real poles, numerator degree at most the denominator's.
HalfPlaneRational random_bounded(random::Engine& rng) {
  std::uniform_real_distribution<double> x(-2.0, 2.0), y(0.3, 2.0);
  const int poles = random::uniform_int(rng, 0, 3);
  const int zeros = random::uniform_int(rng, 0, poles);
  std::vector<Root> zs, ps;
  for (int k = 0; k < poles; ++k) ps.push_back({Complex(x(rng), (k % 2 ? 1.0 : -1.0) * y(rng)), 1});
  for (int k = 0; k < zeros; ++k) zs.push_back({Complex(x(rng), (k % 2 ? -1.0 : 1.0) * y(rng)), 1});
  return hp(RationalFunction::from_roots(random::gain(rng), std::move(zs), std::move(ps)));
}

// ---- cayley_function ----

TEST(CayleyFunction, FirstOrderPole) {
  const auto v = cayley_function(hp(shift(I).reciprocal()));
  EXPECT_TRUE(v.is_constant());
  EXPECT_NEAR(std::abs(v.gain() - std::sqrt(kPi) / I), 0.0, 1e-12);
}

TEST(CayleyFunction, Zero) { EXPECT_TRUE(cayley_function(hp(RationalFunction{})).is_zero()); }

TEST(CayleyFunction, SecondOrderPole) {
  const auto f = hp(shift(I).pow(-2));
  EXPECT_TRUE(same_function(cayley_function(f), poly({1.0, 1.0}) * (-std::sqrt(kPi) / 2.0), 1e-12));
  const auto norms = cayley_norms(f);
  EXPECT_NEAR(norms.line, std::sqrt(kPi / 2.0), 1e-9);
  EXPECT_NEAR(norms.circle, std::sqrt(kPi / 2.0), 1e-9);
}

TEST(CayleyFunction, Errors) {
  EXPECT_EQ(code_of([] { cayley_function(hp(RationalFunction::monomial(-1))); }), ErrorCode::NotSquareIntegrable);
  EXPECT_EQ(code_of([] { cayley_function(hp(RationalFunction::z() / shift(I))); }), ErrorCode::NotSquareIntegrable);
}

TEST(CayleyFunction, IsometryAgainstIndependentQuadrature) {
  random::Engine rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_h2_upper(rng);
    const auto v = cayley_function(f);
    const double line = testing::line_norm([&](Complex s) { return f(s); });
    const double circle = testing::circle_norm(testing::as_fn(v));
    EXPECT_NEAR(circle / line, 1.0, 1e-6) << "trial " << trial;
    const auto norms = cayley_norms(f);
    EXPECT_NEAR(norms.line / line, 1.0, 1e-6);
    EXPECT_NEAR(norms.circle / line, 1.0, 1e-6);
  }
}

TEST(CayleyFunction, LandsInDiscHardySpace) {
  random::Engine rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_h2_upper(rng);
    ASSERT_TRUE(halfplane::in_h2_upper(f));
    EXPECT_FALSE(cayley_function(f).has_pole_in_closed_disc());
  }
}

TEST(CayleyFunction, MatchesDefinitionPointwise) {
  random::Engine rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_h2_upper(rng);
    const auto v = cayley_function(f);
    for (int k = 0; k < 16; ++k) {
      const Complex z = random::inside(rng, 0.9);
      const Complex expected = 2.0 * std::sqrt(kPi) / (1.0 + z) * f(I * (1.0 - z) / (1.0 + z));
      EXPECT_NEAR(std::abs(v(z) - expected), 0.0, 1e-9 * (1.0 + std::abs(expected)));
    }
  }
}

// ---- cayley_symbol ----

TEST(CayleySymbol, HalfPlaneBlaschkeFactor) {
  EXPECT_TRUE(same_function(cayley_symbol(hp(shift(-I) / shift(I))).value(), RationalFunction::z() * -1.0));
}

TEST(CayleySymbol, One) {
  EXPECT_TRUE(same_function(cayley_symbol(hp(RationalFunction::constant(1.0))).value(), RationalFunction::constant(1.0)));
}

TEST(CayleySymbol, Reciprocal) {
  EXPECT_TRUE(same_function(cayley_symbol(hp(shift(I) / shift(-I))).value(), RationalFunction::monomial(-1, -1.0)));
}

TEST(CayleySymbol, UnboundedRejected) {
  EXPECT_EQ(code_of([] { cayley_symbol(hp(RationalFunction::z())); }), ErrorCode::UnboundedSymbol);
  EXPECT_EQ(code_of([] { cayley_symbol(hp(shift(-1.0).reciprocal())); }), ErrorCode::UnboundedSymbol);
}

TEST(CayleySymbol, Multiplicative) {
  random::Engine rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_bounded(rng), b = random_bounded(rng);
    const auto product = cayley_symbol(hp(a.value * b.value)).value();
    EXPECT_TRUE(same_function(product, cayley_symbol(a).value() * cayley_symbol(b).value(), 1e-10));
  }
}

TEST(CayleySymbol, InverseSubstitutionRoundTrip) {
  random::Engine rng(65);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_bounded(rng);
    const auto back = halfplane::compose_inverse_cayley(cayley_symbol(g).value());
    ASSERT_EQ(back.numerator_degree(), g.value.numerator_degree());
    ASSERT_EQ(back.denominator_degree(), g.value.denominator_degree());
    double err = 0.0;
    for (int k = 0; k <= back.numerator_degree(); ++k)
      err = std::max(err, std::abs(back.numerator().coeff(k) - g.value.numerator().coeff(k)));
    for (int k = 0; k <= back.denominator_degree(); ++k)
      err = std::max(err, std::abs(back.denominator().coeff(k) - g.value.denominator().coeff(k)));
    EXPECT_LT(err, 1e-9 * (1.0 + g.value.numerator().l1_norm()));
  }
}

// ---- line_conjugate ----

TEST(LineConjugate, MatchesConjugateOnTheAxis) {
  random::Engine rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_bounded(rng);
    const auto c = halfplane::line_conjugate(g);
    for (const double s : {-3.0, -0.4, 0.0, 0.7, 5.0}) EXPECT_NEAR(std::abs(c(s) - std::conj(g(s))), 0.0, 1e-12);
  }
}

// ---- half-plane multiplier test ----

TEST(HalfPlane, ShiftedReproducingKernelIsMaximal) {
  const auto theta = hp(shift(-I) / shift(I));
  const auto k = hp((theta.value - RationalFunction::constant(theta(I))) / shift(-I));
  EXPECT_TRUE(same_function(k.value, shift(I).reciprocal()));
  const auto disc_k = cayley_function(k);
  EXPECT_TRUE(disc_k.is_constant());
  const auto disc_symbol = cayley_symbol(halfplane::line_conjugate(theta));
  EXPECT_TRUE(same_function(disc_symbol.value(), RationalFunction::monomial(-1, -1.0)));
  EXPECT_TRUE(is_maximal(disc_k, disc_symbol).is_maximal);
}

TEST(HalfPlane, IdentityMultiplier) {
  const auto g = halfplane::line_conjugate(hp((shift(-I) / shift(I)).pow(2)));
  EXPECT_TRUE(halfplane_multiplier_test(hp(RationalFunction::constant(1.0)), g, g));
}

TEST(HalfPlane, PulledBackPowerExample) {
  const auto g = hp(halfplane::compose_inverse_cayley(RationalFunction::monomial(-1)));
  const auto h = hp(halfplane::compose_inverse_cayley(RationalFunction::monomial(-2)));
  const auto w = hp(halfplane::compose_inverse_cayley(poly({1.0, 1.0})));
  EXPECT_TRUE(halfplane_multiplier_test(w, g, h));
  const auto w_bad = hp(halfplane::compose_inverse_cayley(poly({0.0, 0.0, 1.0})));
  EXPECT_FALSE(halfplane_multiplier_test(w_bad, g, h));
}

}  // namespace
}  // namespace tk
