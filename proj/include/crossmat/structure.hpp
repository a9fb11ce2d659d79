#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "crossmat/cross_matrix.hpp"

namespace crossmat {

// ---------------------------------------------------------------------------
// Rank-two product factorization
// ---------------------------------------------------------------------------

/// X = Y_1 Y_2 ... Y_k [* diag(I, center, I)], where Y_p is the identity with
/// its pair-p intersection replaced by pair block p of X. Only the nontrivial
/// 2x2 part of each factor is stored.
template <Scalar T>
struct RankTwoFactorization {
  std::size_t n = 0;
  std::vector<Block2<T>> factors;  // factors[p] is the pair-p block of Y_{p+1}
  std::optional<T> center;         // present iff n is odd
};

enum class FactorOrder { forward, reverse };

template <Scalar T>
RankTwoFactorization<T> rank_two_factors(const CrossMatrix<T>& x) {
  RankTwoFactorization<T> f;
  f.n = x.order();
  f.factors = x.blocks();
  if (x.has_center()) f.center = x.center();
  return f;
}

namespace detail {
// M <- M * Y where Y is the identity except for block y at pair p. Only
// columns p and n-1-p of M change, and for cross M those columns are
// nonzero only in rows p and n-1-p: an O(1) update.
template <Scalar T>
void right_multiply_pair(std::vector<T>& diag, std::vector<T>& anti,
                         std::size_t p, const Block2<T>& y) {
  const std::size_t q = diag.size() - 1 - p;
  const Block2<T> m{diag[p], anti[p], anti[q], diag[q]};
  const Block2<T> r = m * y;
  diag[p] = r.a;
  anti[p] = r.b;
  anti[q] = r.c;
  diag[q] = r.d;
}
}  // namespace detail

/// Multiplies the factors back together, either Y_1 ... Y_k * D (forward) or
/// D * Y_k ... Y_1 (reverse), with D = diag(I, center, I) for odd order.
/// Each step is a pair-local update, so the whole product costs O(n).
template <Scalar T>
CrossMatrix<T> assemble(const RankTwoFactorization<T>& f,
                        FactorOrder order = FactorOrder::forward) {
  const std::size_t n = f.n;
  if (n == 0 || f.factors.size() != n / 2 || f.center.has_value() != (n % 2 == 1)) {
    throw Error(ErrorKind::MalformedForm,
                "rank-two factorization of order " + std::to_string(n) + " has " +
                    std::to_string(f.factors.size()) + " factors");
  }
  std::vector<T> diag(n, T(1)), anti(n, T(0));
  const std::size_t k = n / 2;
  auto put_center = [&] {
    if (f.center) {
      diag[k] *= *f.center;
      anti[k] = diag[k];
    }
  };
  if (n % 2 == 1) anti[k] = T(1);

  if (order == FactorOrder::forward) {
    for (std::size_t p = 0; p < k; ++p) detail::right_multiply_pair(diag, anti, p, f.factors[p]);
    put_center();
  } else {
    put_center();
    for (std::size_t p = k; p-- > 0;) detail::right_multiply_pair(diag, anti, p, f.factors[p]);
  }
  return CrossMatrix<T>(n, std::move(diag), std::move(anti));
}

// ---------------------------------------------------------------------------
// Permutation similarity to block-diagonal form
// ---------------------------------------------------------------------------

/// Permutation stored as an index map: source index r moves to position
/// map[r]. As a matrix, P(map[r], r) = 1, so (P A P^T)(map[r], map[c]) = A(r, c).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t v : map_) {
      if (v >= map_.size() || seen[v]) {
        throw Error(ErrorKind::MalformedForm, "index map is not a bijection");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t r) const { return map_[r]; }
  const std::vector<std::size_t>& map() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t r = 0; r < map_.size(); ++r) inv[map_[r]] = r;
    return Permutation(std::move(inv));
  }

  /// this after other: r -> map[other[r]].
  Permutation compose(const Permutation& other) const {
    std::vector<std::size_t> m(map_.size());
    for (std::size_t r = 0; r < m.size(); ++r) m[r] = map_[other[r]];
    return Permutation(std::move(m));
  }

  template <Scalar T>
  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> p(size(), size());
    for (std::size_t r = 0; r < size(); ++r) p(map_[r], r) = T(1);
    return p;
  }

  /// P A P^T by index movement.
  template <Scalar T>
  DenseMatrix<T> similarity(const DenseMatrix<T>& a) const {
    DenseMatrix<T> out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) out(map_[r], map_[c]) = a(r, c);
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// P X P^T = diag(B_1, ..., B_m, [B_{m+1}], [mid | center], C_m, ..., C_1)
/// with m = floor(n/4).
///
/// B_i is pair block 2(i-1) as read from X. C_i is pair block 2i-1 with rows
/// and columns swapped (its first coordinate is the high index n-2i). The
/// middle of the form depends on n mod 4: nothing (0), the center (1), the
/// central 2x2 pair block (2), or B_{m+1} followed by the center (3).
template <Scalar T>
struct BlockDiagonalForm {
  std::size_t n = 0;
  std::vector<Block2<T>> b_blocks;   // B_1, ..., B_m[, B_{m+1}]
  std::vector<Block2<T>> c_blocks;   // C_m, ..., C_1 (output order)
  std::optional<T> center;           // odd n
  std::optional<Block2<T>> mid_block;  // n = 4m+2
  Permutation perm;
};

/// The permutation taking X to its block-diagonal form.
inline Permutation block_permutation(std::size_t n) {
  std::vector<std::size_t> map(n);
  const std::size_t k = n / 2;
  for (std::size_t p = 0; p < k; ++p) {
    const std::size_t q = n - 1 - p;
    if (p % 2 == 0) {  // B-type (or the mid block): low index first
      map[p] = p;
      map[q] = p + 1;
    } else {  // C-type: high index first, placed at the mirrored slot
      map[q] = q;
      map[p] = q + 1;
    }
  }
  if (n % 2 == 1) map[k] = 2 * ((k + 1) / 2);
  return Permutation(std::move(map));
}

template <Scalar T>
BlockDiagonalForm<T> block_diagonalize(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  const std::size_t k = n / 2;
  BlockDiagonalForm<T> f;
  f.n = n;
  for (std::size_t p = 0; p < k; p += 2) {
    if (n % 4 == 2 && p + 1 == k) {
      f.mid_block = x.block_unchecked(p);
    } else {
      f.b_blocks.push_back(x.block_unchecked(p));
    }
  }
  // C_i is pair 2i-1; emitted innermost (C_m) first.
  for (std::size_t i = n / 4; i >= 1; --i) {
    f.c_blocks.push_back(x.block_unchecked(2 * i - 1).flipped());
  }
  if (x.has_center()) f.center = x.center();
  f.perm = block_permutation(n);
  return f;
}

namespace detail {
template <Scalar T>
void check_form(const BlockDiagonalForm<T>& f) {
  const std::size_t n = f.n;
  const std::size_t m = n / 4;
  const std::size_t want_b = (n % 4 == 3) ? m + 1 : m;
  const bool ok = n > 0 && f.b_blocks.size() == want_b && f.c_blocks.size() == m &&
                  f.center.has_value() == (n % 2 == 1) &&
                  f.mid_block.has_value() == (n % 4 == 2) &&
                  f.perm == block_permutation(n);
  if (!ok) {
    throw Error(ErrorKind::MalformedForm,
                "block counts inconsistent with order " + std::to_string(n));
  }
}
}  // namespace detail

/// Inverse of block_diagonalize: pure data movement, bit-exact.
template <Scalar T>
CrossMatrix<T> reconstruct(const BlockDiagonalForm<T>& f) {
  detail::check_form(f);
  const std::size_t n = f.n;
  const std::size_t k = n / 2;
  std::vector<Block2<T>> blocks(k);
  for (std::size_t i = 0; i < f.b_blocks.size(); ++i) blocks[2 * i] = f.b_blocks[i];
  const std::size_t m = f.c_blocks.size();
  for (std::size_t j = 0; j < m; ++j) {
    // c_blocks[j] is C_{m-j}, which is pair 2(m-j)-1.
    blocks[2 * (m - j) - 1] = f.c_blocks[j].flipped();
  }
  if (f.mid_block) blocks[k - 1] = *f.mid_block;
  return CrossMatrix<T>::from_blocks(n, blocks, f.center);
}

/// Dense diag(B_1, ..., C_1) in output order, i.e. P X P^T.
template <Scalar T>
DenseMatrix<T> block_diagonal_dense(const BlockDiagonalForm<T>& f) {
  detail::check_form(f);
  DenseMatrix<T> a(f.n, f.n);
  std::size_t at = 0;
  auto put = [&](const Block2<T>& b) {
    a(at, at) = b.a;
    a(at, at + 1) = b.b;
    a(at + 1, at) = b.c;
    a(at + 1, at + 1) = b.d;
    at += 2;
  };
  for (const auto& b : f.b_blocks) put(b);
  if (f.mid_block) put(*f.mid_block);
  if (f.center) a(at, at) = *f.center, ++at;
  for (const auto& c : f.c_blocks) put(c);
  return a;
}

}  // namespace crossmat
