#pragma once

#include "crossmat/scalar.hpp"

namespace crossmat {

/// Dense 2x2 matrix [[a, b], [c, d]]. Every O(n) algorithm in the library
/// reduces to arithmetic on these.
template <Scalar T>
struct Block2 {
  T a{}, b{}, c{}, d{};

  static constexpr Block2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static constexpr Block2 diagonal(T x, T y) { return {x, T(0), T(0), y}; }

  constexpr T det() const { return a * d - b * c; }
  constexpr T trace() const { return a + d; }

  constexpr Block2 transpose() const { return {a, c, b, d}; }
  constexpr Block2 conj_transpose() const {
    return {conj(a), conj(c), conj(b), conj(d)};
  }
  /// Swaps both rows and columns: J * B * J with J the 2x2 exchange matrix.
  constexpr Block2 flipped() const { return {d, c, b, a}; }

  real_t<T> frobenius() const {
    return std::sqrt(abs2(a) + abs2(b) + abs2(c) + abs2(d));
  }
  real_t<T> max_abs() const {
    using std::max;
    return max(max(abs(a), abs(b)), max(abs(c), abs(d)));
  }

  friend constexpr Block2 operator*(const Block2& x, const Block2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr Block2 operator+(const Block2& x, const Block2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend constexpr Block2 operator-(const Block2& x, const Block2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend constexpr Block2 operator*(const T& s, const Block2& x) {
    return {s * x.a, s * x.b, s * x.c, s * x.d};
  }
  friend constexpr bool operator==(const Block2&, const Block2&) = default;
};

}  // namespace crossmat
