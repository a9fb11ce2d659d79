#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crossmat/cross_matrix.hpp"

namespace crossmat {

/// det of pair block p: x(p,p) x(q,q) - x(p,q) x(q,p), q = n-1-p.
template <Scalar T>
T pair_alpha(const CrossMatrix<T>& x, std::size_t p) {
  return x.pair_block(p).det();
}

template <Scalar T>
T det(const CrossMatrix<T>& x) {
  T d(1);
  for (std::size_t p = 0; p < x.pairs(); ++p) d *= x.block_unchecked(p).det();
  if (x.has_center()) d *= x.center();
  return d;
}

namespace detail {

// |alpha| small relative to the block entries that produced it.
template <Scalar T>
bool alpha_negligible(const Block2<T>& b) {
  const real_t<T> scale = (abs(b.a) + abs(b.b)) * (abs(b.d) + abs(b.c));
  return abs(b.det()) <= epsilon<T>() * scale;
}

inline std::string alpha_name(std::size_t p) {
  return "alpha_" + std::to_string(p + 1) + " ~ 0";
}

template <Scalar T>
void require_nonsingular(const CrossMatrix<T>& x) {
  for (std::size_t p = 0; p < x.pairs(); ++p) {
    if (alpha_negligible(x.block_unchecked(p))) {
      throw Error(ErrorKind::Singular, alpha_name(p), p + 1);
    }
  }
  if (x.has_center() && x.center() == T(0)) {
    const std::size_t c = x.order() / 2 + 1;
    throw Error(ErrorKind::Singular,
                "center x_" + std::to_string(c) + "," + std::to_string(c) + " = 0", c);
  }
}

// Product of every pair determinant except pair `skip` (pass pairs() to skip
// none), times the center for odd order. This is det(X) with one factor
// removed, computed without dividing.
template <Scalar T>
T reduced_det(const CrossMatrix<T>& x, std::size_t skip, bool include_center) {
  T d(1);
  for (std::size_t p = 0; p < x.pairs(); ++p)
    if (p != skip) d *= x.block_unchecked(p).det();
  if (include_center && x.has_center()) d *= x.center();
  return d;
}

}  // namespace detail

/// Determinant of the submatrix obtained by deleting row `row` and column
/// `col` (0-based).
///
/// Uses the closed forms det(X) * x / alpha for the pair cases and
/// det(X) / center for the center. When the divisor is zero the minor is
/// instead expanded directly along the one surviving entry of the deleted
/// pair, which leaves the determinant of the remaining cross matrix.
template <Scalar T>
T minor_det(const CrossMatrix<T>& x, std::size_t row, std::size_t col) {
  const std::size_t n = x.order();
  if (row >= n || col >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "minor (" + std::to_string(row) + ", " + std::to_string(col) +
                    ") of order " + std::to_string(n) + " matrix");
  }
  const std::size_t mirror = n - 1 - row;
  if (row == col && col == mirror) {
    if (x.center() != T(0)) return det(x) / x.center();
    return detail::reduced_det(x, x.pairs(), false);
  }
  if (row != col && col != mirror) return T(0);

  const std::size_t p = std::min(row, mirror);
  const T alpha = x.block_unchecked(p).det();
  // Surviving entry of the deleted pair, with the sign from its position.
  T lead;
  if (row == col) {
    lead = x(mirror, mirror);
  } else {
    lead = x(col, row);
    if (n % 2 == 1) lead = -lead;
  }
  if (alpha != T(0)) return lead * det(x) / alpha;
  return lead * detail::reduced_det(x, p, true);
}

/// adj(X), the transposed cofactor matrix; defined for singular X.
///
/// Pair block p of adj(X) is r_p [[d, -b], [-c, a]] for pair block
/// [[a, b], [c, d]], where r_p is the determinant of every other pair and
/// the center. The r_p come from prefix/suffix products, so this is O(n)
/// and division-free.
template <Scalar T>
CrossMatrix<T> adjugate(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  const std::size_t k = x.pairs();
  std::vector<T> alpha(k);
  for (std::size_t p = 0; p < k; ++p) alpha[p] = x.block_unchecked(p).det();
  std::vector<T> prefix(k + 1, T(1)), suffix(k + 1, T(1));
  for (std::size_t p = 0; p < k; ++p) prefix[p + 1] = prefix[p] * alpha[p];
  for (std::size_t p = k; p-- > 0;) suffix[p] = suffix[p + 1] * alpha[p];
  const T center = x.has_center() ? x.center() : T(1);

  std::vector<Block2<T>> blocks(k);
  for (std::size_t p = 0; p < k; ++p) {
    const Block2<T> b = x.block_unchecked(p);
    const T r = prefix[p] * suffix[p + 1] * center;
    blocks[p] = {r * b.d, -(r * b.b), -(r * b.c), r * b.a};
  }
  std::optional<T> c;
  if (x.has_center()) c = prefix[k];
  return CrossMatrix<T>::from_blocks(n, blocks, c);
}

/// X^{-1} in O(n). Pair block p is [[d, -b], [-c, a]] / alpha_p, the center
/// is 1 / center. Throws Singular naming the first pair whose alpha_p is
/// negligible relative to its entries, or the zero center.
template <Scalar T>
CrossMatrix<T> inverse(const CrossMatrix<T>& x) {
  detail::require_nonsingular(x);
  const std::size_t n = x.order();
  std::vector<T> diag(n), anti(n);
  for (std::size_t p = 0; p < x.pairs(); ++p) {
    const std::size_t q = n - 1 - p;
    const T alpha = x.block_unchecked(p).det();
    diag[p] = x.diag()[q] / alpha;
    diag[q] = x.diag()[p] / alpha;
    anti[p] = -x.anti()[p] / alpha;
    anti[q] = -x.anti()[q] / alpha;
  }
  if (x.has_center()) {
    diag[n / 2] = T(1) / x.center();
    anti[n / 2] = diag[n / 2];
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

/// Solves X v = b pair by pair, each pair an independent 2x2 system solved
/// by elimination with partial pivoting.
template <Scalar T>
std::vector<T> solve(const CrossMatrix<T>& x, std::span<const T> b) {
  const std::size_t n = x.order();
  if (b.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "right-hand side has " + std::to_string(b.size()) + " entries, order is " +
                    std::to_string(n));
  }
  detail::require_nonsingular(x);
  std::vector<T> v(n);
  for (std::size_t p = 0; p < x.pairs(); ++p) {
    const std::size_t q = n - 1 - p;
    Block2<T> m = x.block_unchecked(p);
    T y0 = b[p], y1 = b[q];
    const bool swap = abs(m.c) > abs(m.a);
    if (swap) {
      std::swap(m.a, m.c);
      std::swap(m.b, m.d);
      std::swap(y0, y1);
    }
    const T l = m.c / m.a;
    const T u = m.d - l * m.b;
    v[q] = (y1 - l * y0) / u;
    v[p] = (y0 - m.b * v[q]) / m.a;
  }
  if (x.has_center()) v[n / 2] = b[n / 2] / x.center();
  return v;
}

template <Scalar T>
std::vector<T> solve(const CrossMatrix<T>& x, const std::vector<T>& b) {
  return solve(x, std::span<const T>(b));
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and eigenvalues
// ---------------------------------------------------------------------------

/// lambda^2 - trace_term * lambda + alpha, the characteristic polynomial of
/// one pair block.
template <Scalar T>
struct QuadraticFactor {
  std::size_t pair = 0;  // 0-based pair index
  T trace_term{};
  T alpha{};

  T operator()(const T& lambda) const { return lambda * lambda - trace_term * lambda + alpha; }
};

/// det(X - lambda I) = prod(factors) * (linear_root - lambda) for odd n.
template <Scalar T>
struct CharQuadratics {
  std::vector<QuadraticFactor<T>> factors;
  std::optional<T> linear_root;
};

template <Scalar T>
CharQuadratics<T> char_quadratics(const CrossMatrix<T>& x) {
  CharQuadratics<T> out;
  out.factors.reserve(x.pairs());
  for (std::size_t p = 0; p < x.pairs(); ++p) {
    const Block2<T> b = x.block_unchecked(p);
    out.factors.push_back({p, b.trace(), b.det()});
  }
  if (x.has_center()) out.linear_root = x.center();
  return out;
}

/// Roots of a 2x2 block's characteristic polynomial.
///
/// A triangular block returns its diagonal (a, d) exactly. Otherwise the
/// larger-magnitude root comes first. The discriminant is formed as (a-d)^2 + 4bc, which avoids the
/// cancellation in trace^2 - 4 det. The first root adds the square root
/// with the sign that matches the trace; the second comes from the product
/// identity root1 * root2 = det.
template <Scalar T>
std::pair<complex_t<T>, complex_t<T>> block_eigenvalues(const Block2<T>& blk) {
  using C = complex_t<T>;
  using R = real_t<T>;
  const C a(blk.a), b(blk.b), c(blk.c), d(blk.d);
  if (b == C(0) || c == C(0)) return {a, d};
  const C t = a + d;
  const C amd = a - d;
  const C disc = amd * amd + R(4) * b * c;
  C s;
  if constexpr (is_complex_v<T>) {
    s = std::sqrt(disc);
  } else {
    // Real blocks: keep the real branch exact when disc >= 0.
    s = disc.real() >= R(0) ? C(std::sqrt(disc.real()), R(0))
                            : C(R(0), std::sqrt(-disc.real()));
  }
  if ((std::conj(t) * s).real() < R(0)) s = -s;
  const C r1 = (t + s) / R(2);
  const C alpha = a * d - b * c;
  const C r2 = (r1 == C(0)) ? C(0) : alpha / r1;
  return {r1, r2};
}

/// Eigenvalues in pair-aligned order: the roots of pair p sit at positions p
/// and n-1-p in block_eigenvalues order, the center at n/2.
template <Scalar T>
std::vector<complex_t<T>> eigenvalues_complex(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  std::vector<complex_t<T>> ev(n);
  for (std::size_t p = 0; p < x.pairs(); ++p) {
    const auto [r1, r2] = block_eigenvalues(x.block_unchecked(p));
    ev[p] = r1;
    ev[n - 1 - p] = r2;
  }
  if (x.has_center()) ev[n / 2] = complex_t<T>(x.center());
  return ev;
}

/// Eigenvalues in the scalar type of X. For real X with a complex-conjugate
/// eigenvalue pair this throws ComplexEigenvalues; use eigenvalues_complex.
template <Scalar T>
std::vector<T> eigenvalues(const CrossMatrix<T>& x) {
  const auto ev = eigenvalues_complex(x);
  if constexpr (is_complex_v<T>) {
    return ev;
  } else {
    std::vector<T> out(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (ev[i].imag() != T(0)) {
        const std::size_t p = std::min(i, ev.size() - 1 - i);
        throw Error(ErrorKind::ComplexEigenvalues,
                    "pair " + std::to_string(p + 1) +
                        " has complex eigenvalues; use the complex scalar type",
                    p + 1);
      }
      out[i] = ev[i].real();
    }
    return out;
  }
}

/// Values with their original positions, sorted by descending magnitude.
/// Ties keep positional order.
template <typename V>
std::vector<std::pair<V, std::size_t>> sorted_by_magnitude(const std::vector<V>& values) {
  std::vector<std::pair<V, std::size_t>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.emplace_back(values[i], i);
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return std::abs(l.first) > std::abs(r.first);
  });
  return out;
}

}  // namespace crossmat
