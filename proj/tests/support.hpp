#pragma once

// Random instance generators and comparison helpers shared by the tests.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "crossmat/crossmat.hpp"
#include "crossmat/oracle.hpp"

namespace crossmat::testing {

using C = std::complex<double>;

template <Scalar T>
T random_scalar(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  if constexpr (is_complex_v<T>) {
    return T(u(rng), u(rng));
  } else {
    return u(rng);
  }
}

/// Entries uniform in [-1, 1] (real and imaginary parts for complex T).
template <Scalar T>
CrossMatrix<T> random_cross(std::size_t n, std::mt19937_64& rng) {
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = random_scalar<T>(rng);
    anti[i] = random_scalar<T>(rng);
  }
  if (n % 2 == 1) anti[n / 2] = diag[n / 2];
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

/// Rescales every pair block to unit Frobenius norm and redraws until
/// each |alpha_p| and the center magnitude are at least `min_alpha`.
/// A positive `min_pivot` also bounds |x(p,p)| from below (LU without pivoting).
template <Scalar T>
CrossMatrix<T> random_well_conditioned(std::size_t n, std::mt19937_64& rng, double min_alpha = 0.1,
                                       double min_pivot = 0.0) {
  std::vector<Block2<T>> blocks(n / 2);
  for (auto& b : blocks) {
    for (;;) {
      b = {random_scalar<T>(rng), random_scalar<T>(rng), random_scalar<T>(rng), random_scalar<T>(rng)};
      const double f = b.frobenius();
      if (f == 0) continue;
      b = T(1.0 / f) * b;
      if (abs(b.det()) >= min_alpha && abs(b.a) >= min_pivot) break;
    }
  }
  std::optional<T> center;
  if (n % 2 == 1) {
    T c;
    do c = random_scalar<T>(rng);
    while (abs(c) < min_alpha);
    center = c;
  }
  return CrossMatrix<T>::from_blocks(n, blocks, center);
}

/// Hermitian positive definite: Z* Z + I.
template <Scalar T>
CrossMatrix<T> random_spd(std::size_t n, std::mt19937_64& rng) {
  const auto z = random_cross<T>(n, rng);
  return conj_transpose(z) * z + CrossMatrix<T>::identity(n);
}

/// Diagonalizable with well separated eigenvalues: each pair block is
/// V diag(l1, l2) V^{-1} with |l1 - l2| >= 0.5 and cond(V) moderate.
template <Scalar T>
CrossMatrix<T> random_diagonalizable(std::size_t n, std::mt19937_64& rng) {
  std::vector<Block2<T>> blocks(n / 2);
  for (auto& b : blocks) {
    T l1, l2;
    do {
      l1 = random_scalar<T>(rng);
      l2 = random_scalar<T>(rng);
    } while (abs(l1 - l2) < 0.5);
    Block2<T> v;
    do {
      v = {random_scalar<T>(rng), random_scalar<T>(rng), random_scalar<T>(rng), random_scalar<T>(rng)};
    } while (abs(v.det()) < 0.3);
    const T d = v.det();
    const Block2<T> vinv{v.d / d, -v.b / d, -v.c / d, v.a / d};
    b = v * Block2<T>::diagonal(l1, l2) * vinv;
  }
  std::optional<T> center;
  if (n % 2 == 1) center = random_scalar<T>(rng);
  return CrossMatrix<T>::from_blocks(n, blocks, center);
}

/// True when every off-cross entry of A is exactly zero.
template <Scalar T>
bool exactly_cross(const DenseMatrix<T>& a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!CrossMatrix<T>::on_cross(a.rows(), r, c) && a(r, c) != T(0)) return false;
  return true;
}

template <Scalar T>
double max_diff(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return max_abs(x - y);
}

template <Scalar T>
double max_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return oracle::max_abs_diff(a, b);
}

template <Scalar T>
double max_diff(const std::vector<T>& a, const std::vector<T>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, static_cast<double>(abs(a[i] - b[i])));
  return m;
}

template <Scalar T>
double unitarity_defect(const CrossMatrix<T>& q) {
  return max_abs(conj_transpose(q) * q - CrossMatrix<T>::identity(q.order()));
}

template <Scalar T>
std::vector<T> to_vec(std::span<const T> s) {
  return {s.begin(), s.end()};
}

}  // namespace crossmat::testing
