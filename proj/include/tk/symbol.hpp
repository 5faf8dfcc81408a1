#pragma once

#include <optional>

#include "tk/error.hpp"
#include "tk/rational.hpp"

namespace tk {

/// A reduced rational function read on the unit circle, z̄ already rewritten
/// as 1/z. Caches circle invertibility and the winding number.
class ToeplitzSymbol {
 public:
  explicit ToeplitzSymbol(RationalFunction value) : value_(std::move(value)) {
    if (value_.is_zero()) throw Error(ErrorCode::ZeroFunction, "the zero symbol is not admissible");
    invertible_ = count_in(value_.zeros(), Region::OnCircle) == 0 &&
                  count_in(value_.poles(), Region::OnCircle) == 0;
    if (invertible_)
      winding_ = count_in(value_.zeros(), Region::Inside) - count_in(value_.poles(), Region::Inside);
  }

  const RationalFunction& value() const noexcept { return value_; }
  bool circle_invertible() const noexcept { return invertible_; }
  std::optional<int> winding() const noexcept { return winding_; }

  void require_invertible(const char* what = "symbol") const {
    if (!invertible_)
      throw Error(ErrorCode::NotInvertibleOnCircle,
                  std::string(what) + " has a zero or pole on the unit circle");
  }

  Complex operator()(Complex z) const { return value_(z); }

 private:
  RationalFunction value_;
  bool invertible_ = false;
  std::optional<int> winding_;
};

/// Zeros inside minus poles inside, counted with multiplicity.
inline int winding_number(const ToeplitzSymbol& s) {
  s.require_invertible();
  return *s.winding();
}

inline ToeplitzSymbol circle_conjugate(const ToeplitzSymbol& s) {
  return ToeplitzSymbol(circle_conjugate(s.value()));
}

inline ToeplitzSymbol operator*(const ToeplitzSymbol& a, const ToeplitzSymbol& b) {
  return ToeplitzSymbol(a.value() * b.value());
}

}  // namespace tk
