#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tk/error.hpp"
#include "tk/factorization.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

namespace tk {

/// ker T_g for a circle-invertible rational symbol, with the ladder basis
/// { plus * z^j : j < dimension } where plus(0) = 1.
struct ToeplitzKernel {
  ToeplitzSymbol symbol;
  int dimension = 0;
  std::vector<RationalFunction> basis;
};

inline bool in_hardy_space(const RationalFunction& f) {
  return f.is_zero() || !f.has_pole_in_closed_disc();
}

inline bool is_outer(const RationalFunction& f) {
  return !f.is_zero() && in_hardy_space(f) && !f.has_zero_in(Region::Inside);
}

inline ToeplitzKernel kernel(const ToeplitzSymbol& s) {
  const int winding = winding_number(s);
  ToeplitzKernel out{s, std::max(0, -winding), {}};
  if (out.dimension == 0) return out;
  const auto plus = wiener_hopf(s).plus;
  for (int j = 0; j < out.dimension; ++j) out.basis.push_back(plus * RationalFunction::monomial(j));
  return out;
}

/// f in ker T_s: f in H^2 and s*f = z̄ * conj(q) with q in H^2, decided on the
/// reduced form of q = circle_conjugate(z s f).
inline bool kernel_contains(const ToeplitzSymbol& s, const RationalFunction& f) {
  if (f.is_zero()) return true;
  if (!in_hardy_space(f)) return false;
  const auto q = circle_conjugate(RationalFunction::z() * s.value() * f);
  return in_hardy_space(q);
}

inline bool kernel_contains(const ToeplitzKernel& k, const RationalFunction& f) {
  return kernel_contains(k.symbol, f);
}

/// Top ladder element plus * z^(dim-1); its certificate is conj(minus), so it
/// is always a maximal vector.
inline RationalFunction canonical_maximal_vector(const ToeplitzKernel& k) {
  if (k.dimension == 0) throw Error(ErrorCode::TrivialKernel, "kernel is {0}");
  return k.basis.back();
}

struct MinimalKernel {
  ToeplitzSymbol symbol;
  ToeplitzKernel kernel;
};

/// Kmin(k) = ker T_v with v = z̄ conj(theta p) / p for k = theta p.
inline MinimalKernel minimal_kernel(const RationalFunction& k) {
  if (k.is_zero()) throw Error(ErrorCode::ZeroFunction, "minimal kernel of 0");
  if (!in_hardy_space(k))
    throw Error(ErrorCode::NotInHardySpace, "vector has a pole in the closed unit disc");
  const auto io = inner_outer(k);
  ToeplitzSymbol v(RationalFunction::monomial(-1) * circle_conjugate(k) / io.outer);
  auto ker = kernel(v);
  return {std::move(v), std::move(ker)};
}

struct MaximalityCertificate {
  RationalFunction vector;
  RationalFunction certificate;
  bool is_maximal = false;
  std::optional<Complex> failure_witness;
};

/// k is maximal for ker T_s iff p = circle_conjugate(z s k) is outer.
inline MaximalityCertificate is_maximal(const RationalFunction& k, const ToeplitzSymbol& s) {
  s.require_invertible();
  if (k.is_zero() || !in_hardy_space(k))
    throw Error(ErrorCode::NotInKernel, "vector is zero or not in H^2");
  auto p = circle_conjugate(RationalFunction::z() * s.value() * k);
  if (!in_hardy_space(p)) throw Error(ErrorCode::NotInKernel, "vector is not in the kernel");
  MaximalityCertificate out{k, p, true, std::nullopt};
  for (const auto& r : p.zeros())
    if (region_of(r.value) == Region::Inside) {
      out.is_maximal = false;
      out.failure_witness = r.value;
      break;
    }
  return out;
}

inline bool has_trivial_kernel(const ToeplitzSymbol& s) { return winding_number(s) >= 0; }

namespace detail {
inline void require_admissible_pair(const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  if (!g.circle_invertible() || !h.circle_invertible())
    throw Error(ErrorCode::UndefinedQuotient,
                "h/g is not circle-admissible: a symbol has a zero or pole on the circle");
}
}  // namespace detail

/// ker T_g ⊆ ker T_h. For nontrivial kernels: circle_conjugate(h/g) has no
/// poles in the closed disc. The zero kernel is contained in every kernel.
inline bool includes(const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  detail::require_admissible_pair(g, h);
  if (has_trivial_kernel(g)) return true;
  if (has_trivial_kernel(h)) return false;
  return !circle_conjugate(h.value() / g.value()).has_pole_in_closed_disc();
}

inline bool equals(const ToeplitzSymbol& g, const ToeplitzSymbol& h) {
  return includes(g, h) && includes(h, g);
}

/// g1 = h_minus * g2 * h_plus
struct EquivalenceWitness {
  RationalFunction h_minus;
  RationalFunction h_plus;
};

inline std::optional<EquivalenceWitness> is_equivalent(const ToeplitzSymbol& g1,
                                                       const ToeplitzSymbol& g2) {
  if (winding_number(g1) != winding_number(g2)) return std::nullopt;
  const auto wh = wiener_hopf(ToeplitzSymbol(g1.value() / g2.value()));
  return EquivalenceWitness{wh.minus, wh.plus.reciprocal()};
}

inline bool is_rigid(const RationalFunction& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroFunction, "rigidity of 0");
  if (!in_hardy_space(p)) throw Error(ErrorCode::NotInHardySpace, "function is not in H^2");
  if (p.has_zero_in(Region::Inside)) throw Error(ErrorCode::NotOuter, "function has a zero in the disc");
  return minimal_kernel(p).kernel.dimension == 1;
}

/// g_minus * conj(theta)^N * g_plus^{-1}
inline RationalFunction assemble_symbol(const RationalFunction& g_minus, const BlaschkeProduct& theta,
                                        int N, const RationalFunction& g_plus) {
  const auto theta_r = theta.to_rational();
  return g_minus * circle_conjugate(theta_r).pow(N) / g_plus;
}

/// dim ker T_g = nN for g = g_minus theta^{-N} g_plus^{-1} (0 when N <= 0).
inline int dim_from_factorization(const RationalFunction& g_minus, const BlaschkeProduct& theta,
                                  int N, const RationalFunction& g_plus) {
  if (g_minus.is_zero() || !is_outer(circle_conjugate(g_minus)))
    throw Error(ErrorCode::PreconditionViolation,
                "non-outer factor: circle_conjugate(g_minus) is not outer in H^2");
  if (!is_outer(g_plus))
    throw Error(ErrorCode::PreconditionViolation, "non-outer factor: g_plus is not outer in H^2");
  if (!is_rigid(g_plus))
    throw Error(ErrorCode::PreconditionViolation, "non-rigid g_plus: its minimal kernel is not 1-dimensional");
  const int dim = N <= 0 ? 0 : theta.degree() * N;
  const ToeplitzSymbol assembled(assemble_symbol(g_minus, theta, N, g_plus));
  if (assembled.circle_invertible() && kernel(assembled).dimension != dim)
    throw Error(ErrorCode::VerificationMismatch,
                "kernel() of the assembled symbol disagrees with nN");
  return dim;
}

}  // namespace tk
