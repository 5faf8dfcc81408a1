#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tk/factorization.hpp"
#include "tk/rational.hpp"
#include "tk/symbol.hpp"

// Generators for randomized checks. Interior points stay within radius 0.7
// and exterior points beyond 1.5 so the numeric oracle resolves every instance.
namespace tk::random {

using Engine = std::mt19937_64;

inline Complex point_in_annulus(Engine& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> radius(rmin, rmax), angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius(rng), angle(rng));
}

inline Complex inside(Engine& rng, double rmax = 0.7) { return point_in_annulus(rng, 0.0, rmax); }
inline Complex outside(Engine& rng, double rmin = 1.5, double rmax = 3.0) {
  return point_in_annulus(rng, rmin, rmax);
}

inline Complex unimodular(Engine& rng) { return point_in_annulus(rng, 1.0, 1.0); }

inline Complex gain(Engine& rng) { return point_in_annulus(rng, 0.5, 2.0); }

inline int uniform_int(Engine& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline BlaschkeProduct blaschke(Engine& rng, int degree, double rmax = 0.7) {
  std::vector<Root> zeros;
  for (int k = 0; k < degree; ++k) zeros.push_back({inside(rng, rmax), 1});
  return BlaschkeProduct(std::move(zeros), unimodular(rng));
}

/// Zeros and poles all outside the closed disc: outer, invertible in H^inf.
inline RationalFunction outer(Engine& rng, int zeros, int poles) {
  std::vector<Root> zs, ps;
  for (int k = 0; k < zeros; ++k) zs.push_back({outside(rng), 1});
  for (int k = 0; k < poles; ++k) ps.push_back({outside(rng), 1});
  return RationalFunction::from_roots(gain(rng), std::move(zs), std::move(ps));
}

/// Circle-invertible symbol with num + den degree <= max_total_degree.
inline ToeplitzSymbol symbol(Engine& rng, int max_total_degree = 10) {
  const int total = uniform_int(rng, 1, max_total_degree);
  const int zeros = uniform_int(rng, 0, total);
  const int poles = total - zeros;
  std::vector<Root> zs, ps;
  std::bernoulli_distribution in_disc(0.5), at_origin(0.25);
  auto draw = [&](std::vector<Root>& into, int count, double inside_bias) {
    for (int k = 0; k < count; ++k) {
      if (std::bernoulli_distribution(inside_bias)(rng))
        into.push_back({at_origin(rng) ? Complex{} : inside(rng), 1});
      else
        into.push_back({outside(rng), 1});
    }
  };
  // Bias poles toward the disc so that negative windings (nontrivial kernels) are common.
  draw(zs, zeros, 0.35);
  draw(ps, poles, 0.7);
  return ToeplitzSymbol(RationalFunction::from_roots(gain(rng), std::move(zs), std::move(ps)));
}

/// Symbol with a kernel of dimension at least one.
inline ToeplitzSymbol symbol_with_kernel(Engine& rng, int max_total_degree = 10) {
  while (true) {
    auto s = symbol(rng, max_total_degree);
    if (winding_number(s) < 0) return s;
  }
}

}  // namespace tk::random
