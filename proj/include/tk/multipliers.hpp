#pragma once

#include <optional>
#include <vector>

#include "tk/error.hpp"
#include "tk/factorization.hpp"
#include "tk/kernels.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

namespace tk {

/// w * ker ⊂ L^2(T): at rational scale, no product w*b has a pole on the circle.
inline bool carleson_check(const RationalFunction& w, const ToeplitzKernel& k) {
  if (w.is_zero()) return true;
  for (const auto& b : k.basis)
    if ((w * b).has_pole_in(Region::OnCircle)) return false;
  return true;
}

/// Outcome of the two independent multiplier tests.
struct MultiplierRoutes {
  bool analytic = false;  // no poles in the open disc
  bool carleson = false;
  bool maximal_vector = false;  // carleson and w * k_max in ker T_h
  bool smirnov = false;         // carleson and circle_conjugate(h w / g) has no poles in the open disc
};

namespace detail {
inline void require_nontrivial(const ToeplitzKernel& k, const char* which) {
  if (k.dimension == 0) throw Error(ErrorCode::TrivialKernel, std::string(which) + " kernel is {0}");
}
}  // namespace detail

inline MultiplierRoutes multiplier_routes(const RationalFunction& w, const ToeplitzSymbol& g,
                                          const ToeplitzSymbol& h) {
  g.require_invertible("g");
  h.require_invertible("h");
  const auto kg = kernel(g);
  const auto kh = kernel(h);
  detail::require_nontrivial(kg, "source");
  detail::require_nontrivial(kh, "target");
  MultiplierRoutes r;
  if (w.is_zero()) return {true, true, true, true};
  r.analytic = !w.has_pole_in(Region::Inside);
  r.carleson = carleson_check(w, kg);
  const bool base = r.analytic && r.carleson;
  r.maximal_vector = base && kernel_contains(h, w * canonical_maximal_vector(kg));
  r.smirnov = base && !circle_conjugate(h.value() * w / g.value()).has_pole_in(Region::Inside);
  return r;
}

/// w ∈ M(ker T_g, ker T_h), decided with the canonical maximal vector and
/// cross-checked against the Smirnov-class criterion.
inline bool is_multiplier(const RationalFunction& w, const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  const auto r = multiplier_routes(w, g, h);
  if (r.maximal_vector != r.smirnov)
    throw Error(ErrorCode::VerificationMismatch, "maximal-vector and Smirnov multiplier tests disagree");
  return r.maximal_vector;
}

/// Same test with a caller-supplied maximal vector of ker T_g.
inline bool is_multiplier_with(const RationalFunction& w, const ToeplitzSymbol& g,
                               const ToeplitzSymbol& h, const RationalFunction& maximal_vector) {
  if (!is_maximal(maximal_vector, g).is_maximal)
    throw Error(ErrorCode::PreconditionViolation, "test vector is not maximal for ker T_g");
  const auto kg = kernel(g);
  h.require_invertible("h");
  detail::require_nontrivial(kernel(h), "target");
  if (w.is_zero()) return true;
  return !w.has_pole_in(Region::Inside) && carleson_check(w, kg) &&
         kernel_contains(h, w * maximal_vector);
}

struct MultiplierSpace {
  ToeplitzSymbol source;
  ToeplitzSymbol target;
  ToeplitzSymbol test_symbol;  // reduced z̄ h / g
  ToeplitzKernel space;
  bool carleson_filtered = false;
  bool bounded_checked = false;
};

/// M_2(ker T_g, ker T_h) = C(ker T_g) ∩ ker T_{z̄ h / g}
inline MultiplierSpace multiplier_space(const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  g.require_invertible("g");
  h.require_invertible("h");
  ToeplitzSymbol test(RationalFunction::monomial(-1) * h.value() / g.value());
  if (!test.circle_invertible())
    throw Error(ErrorCode::UndefinedQuotient, "z̄ h / g is not circle-admissible");
  auto space = kernel(test);
  const auto kg = kernel(g);
  std::vector<RationalFunction> kept;
  for (auto& b : space.basis)
    if (carleson_check(b, kg)) kept.push_back(std::move(b));
  space.basis = std::move(kept);
  space.dimension = static_cast<int>(space.basis.size());
  return {g, h, std::move(test), std::move(space), true, false};
}

/// M_∞: the M_2 space with every basis element re-verified bounded on the disc.
inline MultiplierSpace multiplier_space_bounded(const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  auto m = multiplier_space(g, h);
  std::vector<RationalFunction> kept;
  for (auto& b : m.space.basis)
    if (!b.has_pole_in_closed_disc()) kept.push_back(std::move(b));
  m.space.basis = std::move(kept);
  m.space.dimension = static_cast<int>(m.space.basis.size());
  m.bounded_checked = true;
  return m;
}

/// w ker T_g when it is itself a Toeplitz kernel (then it equals Kmin(w k_max)).
inline std::optional<ToeplitzKernel> image_kernel(const RationalFunction& w, const ToeplitzSymbol& g) {
  if (w.is_zero()) throw Error(ErrorCode::ZeroFunction, "multiplier is 0");
  const auto kg = kernel(g);
  if (!carleson_check(w, kg)) throw Error(ErrorCode::CarlesonFailure, "w ker T_g is not in L^2");
  if (kg.dimension == 0) return kg;
  auto mk = minimal_kernel(w * canonical_maximal_vector(kg));
  if (mk.kernel.dimension != kg.dimension) return std::nullopt;
  for (const auto& b : kg.basis)
    if (!kernel_contains(mk.kernel, w * b)) return std::nullopt;
  return std::move(mk.kernel);
}

struct SurjectivityReport {
  RationalFunction multiplier;
  bool holds = false;
  bool outer_ok = false;
  bool carleson_forward_ok = false;
  bool carleson_inverse_ok = false;
  bool symbol_identity_ok = false;
};

/// w maps ker T_g onto ker T_h iff w is outer, w ∈ C(ker T_g),
/// 1/w ∈ C(ker T_h), and ker T_h = ker T_{g conj(w)/w}.
inline SurjectivityReport is_surjective_multiplier(const RationalFunction& w, const ToeplitzSymbol& g,
                                                   const ToeplitzSymbol& h) {
  if (w.is_zero()) throw Error(ErrorCode::ZeroFunction, "multiplier is 0");
  g.require_invertible("g");
  h.require_invertible("h");
  const auto kg = kernel(g);
  const auto kh = kernel(h);
  detail::require_nontrivial(kg, "source");
  detail::require_nontrivial(kh, "target");
  SurjectivityReport r{w};
  r.outer_ok = !w.has_zero_in(Region::Inside) && !w.has_pole_in(Region::Inside);
  r.carleson_forward_ok = carleson_check(w, kg);
  r.carleson_inverse_ok = carleson_check(w.reciprocal(), kh);
  const ToeplitzSymbol linked(g.value() * circle_conjugate(w) / w);
  r.symbol_identity_ok = linked.circle_invertible() && equals(h, linked);
  r.holds = r.outer_ok && r.carleson_forward_ok && r.carleson_inverse_ok && r.symbol_identity_ok;
  return r;
}

/// phi = alpha * theta * w / conj(w); phi carries constant 1 and alpha is
/// reported separately.
struct CrofootCompanion {
  BlaschkeProduct phi;
  Complex alpha{1.0};
};

inline std::optional<CrofootCompanion> crofoot_companion(const BlaschkeProduct& theta,
                                                         const RationalFunction& w) {
  if (w.is_zero()) throw Error(ErrorCode::ZeroFunction, "multiplier is 0");
  if (w.has_zero_in(Region::Inside) || w.has_pole_in(Region::Inside))
    throw Error(ErrorCode::NotOuter, "multiplier is not outer");
  const auto b = as_blaschke(theta.to_rational() * w / circle_conjugate(w));
  if (!b) return std::nullopt;
  return CrofootCompanion{BlaschkeProduct(b->zeros()), b->constant()};
}

}  // namespace tk
