#pragma once

#include <array>

namespace biotfs {

struct TriangleQuadPoint {
  std::array<double, 3> bary;  ///< barycentric coordinates
  double weight;               ///< weights sum to 1 (multiply by element area)
};

/// Symmetric 6-point rule, exact for polynomials of total degree <= 4.
inline constexpr std::array<TriangleQuadPoint, 6> kTriangleRuleDeg4 = [] {
  constexpr double a1 = 0.44594849091596488632;
  constexpr double b1 = 1.0 - 2.0 * a1;
  constexpr double w1 = 0.22338158967801146570;
  constexpr double a2 = 0.091576213509770743460;
  constexpr double b2 = 1.0 - 2.0 * a2;
  constexpr double w2 = 0.10995174365532186764;
  return std::array<TriangleQuadPoint, 6>{{
      {{a1, a1, b1}, w1},
      {{a1, b1, a1}, w1},
      {{b1, a1, a1}, w1},
      {{a2, a2, b2}, w2},
      {{a2, b2, a2}, w2},
      {{b2, a2, a2}, w2},
  }};
}();

}  // namespace biotfs
