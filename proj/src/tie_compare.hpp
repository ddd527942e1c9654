#pragma once

// Sign decisions on descriptor expressions: exact when rational data is
// available, binary64 with a relative tolerance otherwise.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"

namespace jacobi::detail {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

template <class T>
struct Shape {
  T beta1, beta2, x0, x1, x2, y0, y1, y2;
};

template <class T>
T magnitude(const T& v) {
  return v < T(0) ? T(-v) : v;
}

class TieComparator {
 public:
  explicit TieComparator(const PowerAsymptotics& p)
      : d_{p.beta1, p.beta2, p.x0, p.x1, p.x2, p.y0, p.y1, p.y2} {
    if (p.exact) {
      const auto& e = *p.exact;
      r_ = Shape<Rational>{e.beta1, e.beta2, e.x0, e.x1, e.x2, e.y0, e.y1, e.y2};
    }
  }

  bool exact() const noexcept { return r_.has_value(); }

  /// sign(lhs(shape) - rhs(shape)).
  template <class L, class R>
  Sign compare(L lhs, R rhs, std::string_view what) {
    if (r_) {
      const Rational diff = Rational(lhs(*r_)) - Rational(rhs(*r_));
      return diff > 0 ? Sign::Positive : (diff < 0 ? Sign::Negative : Sign::Zero);
    }
    const double a = lhs(d_);
    const double b = rhs(d_);
    const double diff = a - b;
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(diff) <= kTieTolerance * scale) {
      notes_.push_back("near-boundary: " + std::string(what) +
                       " treated as equality (binary64, relative tolerance 1e-12)");
      return Sign::Zero;
    }
    return diff > 0 ? Sign::Positive : Sign::Negative;
  }

  std::vector<std::string> take_notes() { return std::move(notes_); }

 private:
  Shape<double> d_;
  std::optional<Shape<Rational>> r_;
  std::vector<std::string> notes_;
};

// Frequently used expressions, written once for both arithmetic routes.
inline constexpr auto beta1_of = [](const auto& s) { return s.beta1; };
inline constexpr auto beta2_of = [](const auto& s) { return s.beta2; };
inline constexpr auto two_x0 = [](const auto& s) { return decltype(s.x0)(2 * s.x0); };
inline constexpr auto abs_y0 = [](const auto& s) { return magnitude(s.y0); };
/// 2 x1/x0 - 2 y1/y0
inline constexpr auto b_star = [](const auto& s) {
  using T = std::decay_t<decltype(s.x0)>;
  return T(T(2) * s.x1 / s.x0 - T(2) * s.y1 / s.y0);
};
/// z2 / x0 in the exceptional case, beta = beta1.
inline constexpr auto z2_over_x0 = [](const auto& s) {
  using T = std::decay_t<decltype(s.x0)>;
  const T beta = s.beta1;
  return T(T(2) * s.x2 / s.x0 - T(2) * s.y2 / s.y0 +
           (beta - T(1)) / T(2) * (beta - T(2) * s.x1 / s.x0));
};
template <int Num, int Den>
inline constexpr auto constant = [](const auto& s) {
  using T = std::decay_t<decltype(s.x0)>;
  return T(T(Num) / T(Den));
};

inline bool exceptional(TieComparator& cmp) {
  return cmp.compare(beta1_of, beta2_of, "beta1 = beta2") == Sign::Zero &&
         cmp.compare(two_x0, abs_y0, "2 x0 = |y0|") == Sign::Zero;
}

}  // namespace jacobi::detail
