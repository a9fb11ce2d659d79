#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crossmat/block2.hpp"
#include "crossmat/dense.hpp"
#include "crossmat/error.hpp"
#include "crossmat/scalar.hpp"

namespace crossmat {

/// Square matrix whose nonzeros lie on the main diagonal and the
/// anti-diagonal.
///
/// Stored as two length-n vectors: `diag()[i]` is entry (i, i) and
/// `anti()[i]` is entry (i, n-1-i), both 0-based. When n is odd the center
/// entry (c, c), c = (n-1)/2, belongs to both diagonals; it is stored twice
/// and the two copies must be equal.
///
/// Rows/columns i and n-1-i form the *pair* p = min(i, n-1-i). There are
/// n/2 pairs; pair p couples indices p and n-1-p and its entries make up
/// the 2x2 pair block
///
///     [[x(p,p),     x(p,n-1-p)    ],
///      [x(n-1-p,p), x(n-1-p,n-1-p)]].
///
/// Values are immutable; all operations return new matrices.
template <Scalar T>
class CrossMatrix {
 public:
  using value_type = T;

  CrossMatrix(std::size_t n, std::vector<T> diag, std::vector<T> anti)
      : n_(n), diag_(std::move(diag)), anti_(std::move(anti)) {
    if (n_ == 0) {
      throw Error(ErrorKind::DimensionMismatch, "order must be positive");
    }
    if (diag_.size() != n_ || anti_.size() != n_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "order " + std::to_string(n_) + " but diag has " +
                      std::to_string(diag_.size()) + " and anti has " +
                      std::to_string(anti_.size()) + " entries");
    }
    if (n_ % 2 == 1) {
      const std::size_t c = n_ / 2;
      // Compared as values; NaN centers never match.
      if (!(diag_[c] == anti_[c])) {
        throw Error(ErrorKind::CenterConflict,
                    "center entry " + std::to_string(c + 1) +
                        " differs between diagonal and anti-diagonal",
                    c + 1);
      }
    }
  }

  static CrossMatrix zero(std::size_t n) {
    return CrossMatrix(n, std::vector<T>(n, T(0)), std::vector<T>(n, T(0)));
  }

  static CrossMatrix identity(std::size_t n) {
    std::vector<T> anti(n, T(0));
    if (n % 2 == 1) anti[n / 2] = T(1);
    return CrossMatrix(n, std::vector<T>(n, T(1)), std::move(anti));
  }

  /// The exchange matrix J (ones on the anti-diagonal).
  static CrossMatrix exchange(std::size_t n) {
    std::vector<T> diag(n, T(0));
    if (n % 2 == 1) diag[n / 2] = T(1);
    return CrossMatrix(n, std::move(diag), std::vector<T>(n, T(1)));
  }

  static CrossMatrix diagonal(std::vector<T> d) {
    const std::size_t n = d.size();
    std::vector<T> anti(n, T(0));
    if (n % 2 == 1) anti[n / 2] = d[n / 2];
    return CrossMatrix(n, std::move(d), std::move(anti));
  }

  /// Builds a matrix from its n/2 pair blocks and, for odd n, the center.
  static CrossMatrix from_blocks(std::size_t n, std::span<const Block2<T>> blocks,
                                 std::optional<T> center = std::nullopt) {
    if (n == 0 || blocks.size() != n / 2 || center.has_value() != (n % 2 == 1)) {
      throw Error(ErrorKind::DimensionMismatch,
                  "order " + std::to_string(n) + " needs " +
                      std::to_string(n / 2) + " pair blocks" +
                      (n % 2 == 1 ? " and a center" : " and no center"));
    }
    std::vector<T> diag(n), anti(n);
    for (std::size_t p = 0; p < blocks.size(); ++p) {
      const std::size_t q = n - 1 - p;
      diag[p] = blocks[p].a;
      anti[p] = blocks[p].b;
      anti[q] = blocks[p].c;
      diag[q] = blocks[p].d;
    }
    if (center) {
      diag[n / 2] = *center;
      anti[n / 2] = *center;
    }
    return CrossMatrix(n, std::move(diag), std::move(anti));
  }

  std::size_t order() const { return n_; }
  std::size_t pairs() const { return n_ / 2; }
  bool has_center() const { return n_ % 2 == 1; }
  /// Center entry of an odd-order matrix.
  const T& center() const { return diag_[n_ / 2]; }

  std::span<const T> diag() const { return diag_; }
  std::span<const T> anti() const { return anti_; }

  /// Entry (r, c), 0-based; zero off the cross.
  T operator()(std::size_t r, std::size_t c) const {
    if (r == c) return diag_[r];
    if (r + c == n_ - 1) return anti_[r];
    return T(0);
  }

  static bool on_cross(std::size_t n, std::size_t r, std::size_t c) {
    return r == c || r + c == n - 1;
  }

  /// Pair block p, 0 <= p < n/2.
  Block2<T> pair_block(std::size_t p) const {
    if (p >= pairs()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "pair " + std::to_string(p) + " of order " +
                      std::to_string(n_) + " matrix (" +
                      std::to_string(pairs()) + " pairs)");
    }
    return block_unchecked(p);
  }

  Block2<T> block_unchecked(std::size_t p) const {
    const std::size_t q = n_ - 1 - p;
    return {diag_[p], anti_[p], anti_[q], diag_[q]};
  }

  std::vector<Block2<T>> blocks() const {
    std::vector<Block2<T>> out(pairs());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = block_unchecked(p);
    return out;
  }

  friend bool operator==(const CrossMatrix&, const CrossMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<T> diag_;
  std::vector<T> anti_;
};

namespace detail {
inline void require_same_order(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                "orders " + std::to_string(a) + " and " + std::to_string(b));
  }
}

// Applies f entrywise over the stored vectors; preserves the center rule
// because both center copies see identical inputs.
template <Scalar T, typename F>
CrossMatrix<T> zip(const CrossMatrix<T>& x, const CrossMatrix<T>& y, F f) {
  require_same_order(x.order(), y.order());
  const std::size_t n = x.order();
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = f(x.diag()[i], y.diag()[i]);
    anti[i] = f(x.anti()[i], y.anti()[i]);
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}
}  // namespace detail

template <Scalar T>
CrossMatrix<T> add(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return detail::zip(x, y, [](const T& a, const T& b) { return a + b; });
}

template <Scalar T>
CrossMatrix<T> sub(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return detail::zip(x, y, [](const T& a, const T& b) { return a - b; });
}

template <Scalar T>
CrossMatrix<T> scalar_mul(const T& s, const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = s * x.diag()[i];
    anti[i] = s * x.anti()[i];
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

/// Matrix product in O(n): each pair block of the result is the product of
/// the corresponding pair blocks, and the centers multiply as scalars.
template <Scalar T>
CrossMatrix<T> mul(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  detail::require_same_order(x.order(), y.order());
  const std::size_t n = x.order();
  std::vector<T> diag(n), anti(n);
  for (std::size_t p = 0; p < n / 2; ++p) {
    const std::size_t q = n - 1 - p;
    const Block2<T> z = x.block_unchecked(p) * y.block_unchecked(p);
    diag[p] = z.a;
    anti[p] = z.b;
    anti[q] = z.c;
    diag[q] = z.d;
  }
  if (n % 2 == 1) {
    const T c = x.center() * y.center();
    diag[n / 2] = c;
    anti[n / 2] = c;
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

template <Scalar T>
CrossMatrix<T> transpose(const CrossMatrix<T>& x) {
  const auto a = x.anti();
  return CrossMatrix<T>(x.order(), std::vector<T>(x.diag().begin(), x.diag().end()),
                        std::vector<T>(a.rbegin(), a.rend()));
}

template <Scalar T>
CrossMatrix<T> conj_transpose(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = conj(x.diag()[i]);
    anti[i] = conj(x.anti()[n - 1 - i]);
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

template <Scalar T>
CrossMatrix<T> operator+(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return add(x, y);
}
template <Scalar T>
CrossMatrix<T> operator-(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return sub(x, y);
}
template <Scalar T>
CrossMatrix<T> operator*(const CrossMatrix<T>& x, const CrossMatrix<T>& y) {
  return mul(x, y);
}
template <Scalar T>
CrossMatrix<T> operator*(const T& s, const CrossMatrix<T>& x) {
  return scalar_mul(s, x);
}

template <Scalar T>
real_t<T> frobenius(const CrossMatrix<T>& x) {
  real_t<T> s(0);
  const std::size_t n = x.order();
  for (std::size_t i = 0; i < n; ++i) {
    s += abs2(x.diag()[i]);
    if (2 * i + 1 != n) s += abs2(x.anti()[i]);
  }
  return std::sqrt(s);
}

template <Scalar T>
real_t<T> max_abs(const CrossMatrix<T>& x) {
  real_t<T> m(0);
  for (std::size_t i = 0; i < x.order(); ++i) {
    m = std::max(m, abs(x.diag()[i]));
    m = std::max(m, abs(x.anti()[i]));
  }
  return m;
}

template <Scalar T>
DenseMatrix<T> to_dense(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  DenseMatrix<T> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = x.diag()[i];
    a(i, n - 1 - i) = x.anti()[i];
  }
  return a;
}

/// Reads the cross entries of A. Off-cross entries with magnitude <= tol are
/// dropped; anything larger raises NotCross naming the worst offender.
template <Scalar T>
CrossMatrix<T> from_dense(const DenseMatrix<T>& a, real_t<T> tol = real_t<T>(0)) {
  if (!a.square()) {
    throw Error(ErrorKind::NotSquare, std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " matrix");
  }
  const std::size_t n = a.rows();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "order must be positive");
  real_t<T> worst(-1);
  std::size_t wr = 0, wc = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (CrossMatrix<T>::on_cross(n, r, c)) continue;
      const real_t<T> m = abs(a(r, c));
      if (!(m <= tol) && !(m <= worst)) {
        worst = m;
        wr = r;
        wc = c;
      }
    }
  }
  if (worst >= real_t<T>(0) || worst != worst) {
    throw Error(ErrorKind::NotCross,
                "entry (" + std::to_string(wr + 1) + ", " + std::to_string(wc + 1) +
                    ") has magnitude " + std::to_string(worst));
  }
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a(i, i);
    anti[i] = a(i, n - 1 - i);
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

}  // namespace crossmat
