#pragma once

#include <cmath>

#include "cfgreen/types.hpp"

namespace cfgreen {

/// Dense 2x2 complex matrix with closed-form arithmetic; the building block
/// of the block-tridiagonal pipeline.
struct Mat2 {
  Complex m00{0.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{0.0, 0.0};

  static Mat2 zero() { return {}; }
  static Mat2 identity() { return {Complex(1.0, 0.0), {}, {}, Complex(1.0, 0.0)}; }

  Mat2 operator+(const Mat2& o) const { return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11}; }
  Mat2 operator-(const Mat2& o) const { return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator*(Complex s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }

  Complex det() const { return m00 * m11 - m01 * m10; }
  Complex trace() const { return m00 + m11; }
  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  /// Adjugate: X * X.adjugate() == det(X) * I.  Linear in the entries and
  /// never divides, so it stays finite where the inverse would blow up.
  Mat2 adjugate() const { return {m11, -m01, -m10, m00}; }
  double max_abs() const {
    return std::max(std::max(std::abs(m00), std::abs(m01)),
                    std::max(std::abs(m10), std::abs(m11)));
  }

  /// Adjugate-over-determinant inverse.  When |det| < eps the division is
  /// still performed (entries blow up) and *flag is set so callers can treat
  /// the point as a pole instead of aborting a scan.
  Mat2 inverse(double eps, bool* flag) const {
    const Complex d = det();
    if (std::abs(d) < eps && flag) *flag = true;
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
  }
};

inline Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

}  // namespace cfgreen
