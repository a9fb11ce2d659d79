#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace crossmat {

template <typename T>
struct is_complex : std::false_type {};

template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

namespace detail {
template <typename T, bool = is_complex_v<T>>
struct real_of {
  using type = T;
};
template <typename T>
struct real_of<T, true> {
  using type = typename T::value_type;
};
}  // namespace detail

/// Underlying real type: `double` for both `double` and `std::complex<double>`.
template <typename T>
using real_t = typename detail::real_of<T>::type;

template <typename T>
using complex_t = std::complex<real_t<T>>;

/// Real or complex IEEE floating-point scalar.
template <typename T>
concept Scalar = std::is_floating_point_v<T> ||
                 (is_complex_v<T> && std::is_floating_point_v<real_t<T>>);

template <Scalar T>
constexpr T conj(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::conj(x);
  } else {
    return x;
  }
}

template <Scalar T>
real_t<T> abs(const T& x) {
  return std::abs(x);
}

/// |x|^2 without the square root.
template <Scalar T>
constexpr real_t<T> abs2(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::norm(x);
  } else {
    return x * x;
  }
}

template <Scalar T>
constexpr real_t<T> real_part(const T& x) {
  if constexpr (is_complex_v<T>) {
    return x.real();
  } else {
    return x;
  }
}

template <Scalar T>
constexpr real_t<T> imag_part(const T& x) {
  if constexpr (is_complex_v<T>) {
    return x.imag();
  } else {
    return real_t<T>(0);
  }
}

template <Scalar T>
bool is_finite(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  } else {
    return std::isfinite(x);
  }
}

template <Scalar T>
constexpr real_t<T> epsilon() {
  return std::numeric_limits<real_t<T>>::epsilon();
}

/// Unit-modulus factor u with x = u * |x|; 1 when x is zero.
template <Scalar T>
T phase(const T& x) {
  const real_t<T> m = abs(x);
  if (m == real_t<T>(0)) return T(1);
  return x / m;
}

/// Narrows a complex value onto T (drops the imaginary part when T is real).
template <Scalar T>
T from_complex(const complex_t<T>& z) {
  if constexpr (is_complex_v<T>) {
    return z;
  } else {
    return z.real();
  }
}

}  // namespace crossmat
