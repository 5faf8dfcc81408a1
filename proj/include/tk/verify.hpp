#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "tk/expression.hpp"
#include "tk/factorization.hpp"
#include "tk/format.hpp"
#include "tk/halfplane.hpp"
#include "tk/kernels.hpp"
#include "tk/multipliers.hpp"
#include "tk/oracle.hpp"
#include "tk/random.hpp"

namespace tk::verify {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  std::vector<CheckResult> checks;

  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.passed;
    return n;
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }
  bool ok() const { return failed() == 0; }
};

namespace detail {

using Check = std::function<std::string()>;  // empty string = pass, otherwise the failure

inline void run(SuiteReport& report, const std::string& id, const std::string& name, const Check& check) {
  try {
    const auto failure = check();
    report.checks.push_back({id, name, failure.empty(), failure.empty() ? "ok" : failure});
  } catch (const std::exception& e) {
    report.checks.push_back({id, name, false, std::string("exception: ") + e.what()});
  }
}

inline ToeplitzSymbol sym(const char* text) { return ToeplitzSymbol(expr::parse_rational(text)); }
inline RationalFunction fn(const char* text) { return expr::parse_rational(text); }

inline bool close(const RationalFunction& a, const RationalFunction& b, double tol) {
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.25) / 64.0);
    if (std::abs(a(z) - b(z)) > tol * (1.0 + std::abs(b(z)))) return false;
  }
  return true;
}

inline std::string expect(bool cond, const std::string& what) { return cond ? "" : what; }

}  // namespace detail

/// The worked algebraic facts used as the regression set.
inline SuiteReport paper_examples(std::uint64_t seed = 42, double tolerance = 1e-8) {
  using namespace detail;
  SuiteReport r{"paper-examples", seed, tolerance, {}};

  run(r, "kernel-model-space", "K_{z^2} = ker T_{zbar^2} is spanned by 1 and z", [&] {
    const auto k = kernel(sym("zbar^2"));
    return expect(k.dimension == 2 && close(k.basis[0], fn("1"), tolerance) &&
                      close(k.basis[1], fn("z"), tolerance),
                  "expected basis {1, z}");
  });

  run(r, "minkernel-constants", "Kmin(1) = K_z, the constants", [&] {
    const auto mk = minimal_kernel(fn("1"));
    return expect(mk.kernel.dimension == 1 && close(mk.symbol.value(), fn("zbar"), tolerance),
                  "expected symbol zbar and dimension 1");
  });

  run(r, "maximal-linear-grid", "maximal vectors a+bz of K_{z^2} are exactly |a| <= |b|", [&] {
    const auto s = sym("zbar^2");
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) {
        if (i == 0 && j == 0) continue;
        const double a = i / 10.0, b = j / 10.0;
        const auto k = RationalFunction::polynomial(ComplexPolynomial({a, b}));
        if (is_maximal(k, s).is_maximal != (std::abs(a) <= std::abs(b)))
          return "mismatch at a=" + format_real(a) + " b=" + format_real(b);
      }
    return std::string();
  });

  run(r, "maximal-backward-shift", "S*theta is maximal for K_theta", [&] {
    const auto theta = BlaschkeProduct({{Complex(0.5, 0.0), 1}, {Complex(0.0, -0.3), 2}}, Complex(0.0, 1.0));
    const auto t = theta.to_rational();
    const auto backward = (t - RationalFunction::constant(t(Complex{}))) * RationalFunction::monomial(-1);
    return expect(is_maximal(backward, ToeplitzSymbol(circle_conjugate(t))).is_maximal,
                  "backward shift of theta not maximal");
  });

  run(r, "maximal-reproducing-kernel", "reproducing kernel of K_{z^2} at 1/2 is not maximal", [&] {
    const auto c = is_maximal(fn("1+0.5*z"), sym("zbar^2"));
    return expect(!c.is_maximal && c.failure_witness && std::abs(*c.failure_witness + 0.5) < 1e-9,
                  "expected witness zero -1/2");
  });

  run(r, "minkernel-proper-subkernels", "proper kernels inside K_{z^2}: (1+bz)K_z = ker T_{zbar^2 (z+conj b)/(1+bz)}", [&] {
    for (const Complex b : {Complex(0.3, 0.0), Complex(-0.5, 0.2), Complex(0.0, 0.9)}) {
      const auto k = RationalFunction::polynomial(ComplexPolynomial({1.0, b}));
      const auto mk = minimal_kernel(k);
      const ToeplitzSymbol expected(RationalFunction::monomial(-2) *
                                    RationalFunction::polynomial(ComplexPolynomial({std::conj(b), 1.0})) / k);
      if (mk.kernel.dimension != 1 || !equals(mk.symbol, expected) || !includes(mk.symbol, sym("zbar^2")))
        return "failed for b=" + format_complex(b);
    }
    return std::string();
  });

  run(r, "dimension-nN", "dim ker T_g = nN: theta = z^2, N = 1 gives 2; N = 0 and N = -1 give 0", [&] {
    const auto theta = BlaschkeProduct::power_of_z(2);
    const auto one = fn("1"), plus = fn("1+0.5*z");
    return expect(dim_from_factorization(one, theta, 1, plus) == 2 &&
                      dim_from_factorization(one, theta, 0, plus) == 0 &&
                      dim_from_factorization(one, theta, -1, plus) == 0,
                  "dimension mismatch");
  });

  run(r, "carleson-reproducing-inverse", "|w|^2 dm is Carleson for K_{z^2} when w = 1/(1+bz), |b| < 1/2", [&] {
    return expect(carleson_check(fn("1/(1+0.25*z)"), kernel(sym("zbar^2"))), "Carleson check failed");
  });

  run(r, "multiplier-one-plus-z", "multipliers K_z -> K_{z^2} contain 1+z", [&] {
    return expect(is_multiplier(fn("1+z"), sym("zbar"), sym("zbar^2")), "1+z rejected");
  });

  run(r, "non-multiplier-inverse-kernel", "1/(1+bz) does not multiply K_{z^2} into itself", [&] {
    for (const double b : {0.3, 0.6, 0.9}) {
      const auto w = RationalFunction::polynomial(ComplexPolynomial({1.0, b})).reciprocal();
      const auto s = sym("zbar^2");
      if (is_multiplier(w, s, s)) return "accepted for b=" + format_real(b);
      if (!kernel_contains(s, w * RationalFunction::polynomial(ComplexPolynomial({1.0, b}))))
        return "product not in K_{z^2} for b=" + format_real(b);
    }
    return std::string();
  });

  run(r, "m2-power-model-spaces", "M_2(K_{z^n}, K_{z^m}) = K_{z^{m-n+1}} for 1 <= n <= m <= 6", [&] {
    for (int n = 1; n <= 6; ++n)
      for (int m = n; m <= 6; ++m) {
        const auto ms = multiplier_space(ToeplitzSymbol(RationalFunction::monomial(-n)),
                                         ToeplitzSymbol(RationalFunction::monomial(-m)));
        if (ms.space.dimension != m - n + 1 ||
            !equals(ms.test_symbol, ToeplitzSymbol(RationalFunction::monomial(-(m - n + 1)))))
          return "wrong space for n=" + std::to_string(n) + " m=" + std::to_string(m);
      }
    return std::string();
  });

  run(r, "m2-reverse-inclusion", "M_2(ker T_g, ker T_h) = {0} for a strictly larger source kernel", [&] {
    return expect(multiplier_space(sym("zbar^2"), sym("zbar")).space.dimension == 0, "nonzero space");
  });

  run(r, "minf-power-model-spaces", "M_inf(K_{z^n}, K_{z^m}) = K_{z^{m-n+1}} (theta = z, phi = z^3)", [&] {
    const auto ms = multiplier_space_bounded(sym("zbar"), sym("zbar^3"));
    bool bounded = true;
    for (const auto& b : ms.space.basis) bounded = bounded && !b.has_pole_in_closed_disc();
    return expect(ms.space.dimension == 3 && bounded, "expected bounded 3-dimensional space");
  });

  run(r, "image-invertible-multiplier", "w_+ ker T_g = ker T_{g w_+^{-1}} for invertible analytic w_+", [&] {
    const auto g = sym("(2*z+1)/(z^4*(2+z))");
    const auto w = fn("(1+z/3)/(1-z/4)");
    const auto img = image_kernel(w, g);
    return expect(img && img->dimension == 3 && equals(img->symbol, ToeplitzSymbol(g.value() / w)),
                  "image is not ker T_{g/w}");
  });

  run(r, "equal-theta-h-minus", "ker T_h is a model space when h = theta h_-", [&] {
    const auto theta = fn("B(0.5)*B(-0.25i)");
    const ToeplitzSymbol g(circle_conjugate(theta));
    const ToeplitzSymbol h(circle_conjugate(theta) * fn("(2+zbar)/2"));
    return expect(equals(g, h), "kernels differ");
  });

  run(r, "crofoot-single-factor", "Crofoot: theta = z, w = 1/(1 - conj(a) z) gives phi = B(a)", [&] {
    const auto c = crofoot_companion(BlaschkeProduct::power_of_z(1), fn("1/(1-0.5*z)"));
    return expect(c && c->phi.degree() == 1 && std::abs(c->phi.zeros()[0].value - 0.5) < 1e-10 &&
                      std::abs(c->alpha - 1.0) < 1e-10,
                  "companion is not B(0.5)");
  });

  run(r, "halfplane-maximal-vector", "half-plane: k(s) = (theta(s) - theta(i))/(s - i) is maximal for K_theta", [&] {
    const HalfPlaneRational theta{fn("(s-i)/(s+i)")};
    const auto k = (theta.value - RationalFunction::constant(theta(Complex(0, 1)))) /
                   fn("s-i");
    const auto disc_k = cayley_function({k});
    const auto disc_symbol = cayley_symbol(halfplane::line_conjugate(theta));
    return expect(is_maximal(disc_k, disc_symbol).is_maximal, "transferred vector not maximal");
  });

  run(r, "cayley-closed-forms", "Cayley isometry closed forms: 1/(s+i) -> sqrt(pi), 1/(s+i)^2 -> sqrt(pi/2)", [&] {
    const auto a = cayley_norms({fn("1/(s+i)")});
    const auto b = cayley_norms({fn("1/(s+i)^2")});
    const double pi = std::numbers::pi;
    return expect(std::abs(a.circle - std::sqrt(pi)) < 1e-6 && std::abs(a.line - std::sqrt(pi)) < 1e-6 &&
                      std::abs(b.circle - std::sqrt(pi / 2)) < 1e-6 && std::abs(b.line - std::sqrt(pi / 2)) < 1e-6,
                  "norm mismatch");
  });

  run(r, "cli-examples", "CLI examples: dim zbar^2 = 2 and M_2(zbar, zbar^2) = span{1, z}", [&] {
    const auto ms = multiplier_space(sym("zbar"), sym("zbar^2"));
    return expect(kernel(sym("zbar^2")).dimension == 2 && ms.space.dimension == 2 &&
                      close(ms.space.basis[0], fn("1"), tolerance) && close(ms.space.basis[1], fn("z"), tolerance),
                  "unexpected CLI example values");
  });

  return r;
}

/// Symbolic kernel() against the SVD oracle on random symbols.
inline SuiteReport oracle_suite(std::uint64_t seed = 42, double tolerance = 1e-8, int instances = 100) {
  SuiteReport r{"oracle", seed, tolerance, {}};
  random::Engine rng(seed);
  for (int i = 0; i < instances; ++i) {
    const auto s = random::symbol(rng, 10);
    detail::run(r, "instance-" + std::to_string(i), "random symbol " + std::to_string(i), [&] {
      const auto cmp = oracle::compare_kernel(kernel(s));
      if (cmp.numeric_dimension != cmp.symbolic_dimension)
        return "dimension " + std::to_string(cmp.symbolic_dimension) + " vs numeric " +
               std::to_string(cmp.numeric_dimension);
      if (cmp.principal_angle >= 1e-6) return "principal angle " + std::to_string(cmp.principal_angle);
      if (cmp.symbolic_dimension > 0 && cmp.gap_ratio <= 1e3) return "SVD gap " + std::to_string(cmp.gap_ratio);
      return std::string();
    });
  }
  return r;
}

/// Maximal-vector and Smirnov multiplier tests on random triples.
inline SuiteReport multiplier_suite(std::uint64_t seed = 42, double tolerance = 1e-8, int instances = 500) {
  SuiteReport r{"multipliers", seed, tolerance, {}};
  random::Engine rng(seed);
  int agree = 0;
  for (int i = 0; i < instances; ++i) {
    const auto g = random::symbol_with_kernel(rng, 6);
    const auto h = random::symbol_with_kernel(rng, 6);
    RationalFunction w;
    switch (random::uniform_int(rng, 0, 2)) {
      case 0: {
        const auto basis = multiplier_space(g, h).space.basis;
        w = basis.empty() ? random::outer(rng, 1, 1) : basis.front();
        break;
      }
      case 1: w = random::outer(rng, random::uniform_int(rng, 0, 2), random::uniform_int(rng, 0, 2)); break;
      default:
        w = RationalFunction::from_roots(random::gain(rng), {{random::inside(rng), 1}},
                                         {{random::outside(rng), 1}});
    }
    const auto routes = multiplier_routes(w, g, h);
    agree += routes.maximal_vector == routes.smirnov;
  }
  r.checks.push_back({"two-route-agreement", "maximal-vector and Smirnov routes agree", agree == instances,
                      std::to_string(agree) + "/" + std::to_string(instances) + " agree"});
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"paper-examples", "oracle", "multipliers"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, double tolerance) {
  if (name == "paper-examples") return paper_examples(seed, tolerance);
  if (name == "oracle") return oracle_suite(seed, tolerance);
  if (name == "multipliers") return multiplier_suite(seed, tolerance);
  throw Error(ErrorCode::UsageError, "unknown suite '" + name + "'");
}

}  // namespace tk::verify
