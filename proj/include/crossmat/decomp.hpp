#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossmat/linalg.hpp"
#include "crossmat/structure.hpp"

namespace crossmat {

// ---------------------------------------------------------------------------
// LU and Cholesky
// ---------------------------------------------------------------------------

/// X = L U without pivoting. L is unit lower triangular, U upper triangular,
/// and both are cross matrices.
template <Scalar T>
struct CrossLU {
  CrossMatrix<T> L;
  CrossMatrix<T> U;
};

/// Eliminates the one sub-diagonal entry of each pair with multiplier
/// l = x(q,p) / x(p,p). The trailing pivot is updated as
/// x(q,q) - l x(p,q), which equals alpha_p / x(p,p) but stays defined when
/// x(q,q) is zero.
///
/// Throws ZeroPivot(p+1) when |x(p,p)| <= eps * max|pair block p|.
template <Scalar T>
CrossLU<T> lu(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  const std::size_t k = x.pairs();
  std::vector<Block2<T>> lb(k), ub(k);
  for (std::size_t p = 0; p < k; ++p) {
    const Block2<T> b = x.block_unchecked(p);
    if (abs(b.a) <= epsilon<T>() * b.max_abs()) {
      throw Error(ErrorKind::ZeroPivot,
                  "pivot x_" + std::to_string(p + 1) + "," + std::to_string(p + 1) +
                      " ~ 0 (no pivoting)",
                  p + 1);
    }
    const T l = b.c / b.a;
    lb[p] = {T(1), T(0), l, T(1)};
    ub[p] = {b.a, b.b, T(0), b.d - l * b.b};
  }
  std::optional<T> lc, uc;
  if (x.has_center()) {
    lc = T(1);
    uc = x.center();
  }
  return {CrossMatrix<T>::from_blocks(n, lb, lc), CrossMatrix<T>::from_blocks(n, ub, uc)};
}

namespace detail {
template <Scalar T>
bool near(const T& x, const T& y) {
  return abs(x - y) <= real_t<T>(8) * epsilon<T>() * (abs(x) + abs(y));
}
}  // namespace detail

/// Hermitian to roundoff: real diagonal and anti[i] = conj(anti[n-1-i]).
template <Scalar T>
bool is_hermitian(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::near(x.diag()[i], conj(x.diag()[i]))) return false;
    if (!detail::near(x.anti()[i], conj(x.anti()[n - 1 - i]))) return false;
  }
  return true;
}

/// Upper cross factor R with X = R* R and positive real diagonal. Positive
/// definiteness is checked per pair block and at the center.
template <Scalar T>
CrossMatrix<T> cholesky(const CrossMatrix<T>& x) {
  using R = real_t<T>;
  const std::size_t n = x.order();
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::near(x.diag()[i], conj(x.diag()[i])) ||
        !detail::near(x.anti()[i], conj(x.anti()[n - 1 - i]))) {
      const std::size_t p = std::min(i, n - 1 - i);
      throw Error(ErrorKind::NotHermitian,
                  "pair " + std::to_string(p + 1) + " is not conjugate-symmetric", p + 1);
    }
  }
  const std::size_t k = x.pairs();
  std::vector<Block2<T>> rb(k);
  for (std::size_t p = 0; p < k; ++p) {
    const Block2<T> b = x.block_unchecked(p);
    const R a = real_part(b.a);
    const R d = real_part(b.d);
    R s(-1);
    T r12{};
    R r11(0);
    if (a > R(0)) {
      r11 = std::sqrt(a);
      r12 = b.b / r11;
      s = d - abs2(r12);
    }
    if (!(s > R(0))) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "pair block " + std::to_string(p + 1) + " is not positive definite", p + 1);
    }
    rb[p] = {T(r11), r12, T(0), T(std::sqrt(s))};
  }
  std::optional<T> c;
  if (x.has_center()) {
    const R v = real_part(x.center());
    if (!(v > R(0))) {
      throw Error(ErrorKind::NotPositiveDefinite, "center is not positive", k + 1);
    }
    c = T(std::sqrt(v));
  }
  return CrossMatrix<T>::from_blocks(n, rb, c);
}

// ---------------------------------------------------------------------------
// Givens QR
// ---------------------------------------------------------------------------

template <Scalar T>
struct CrossQR {
  CrossMatrix<T> Q;
  CrossMatrix<T> R;
};

/// Unitary G with G [f; g] = [r; 0], r = hypot(|f|, |g|) >= 0. Identity when
/// f = g = 0.
template <Scalar T>
Block2<T> givens(const T& f, const T& g) {
  const real_t<T> r = std::hypot(abs(f), abs(g));
  if (r == real_t<T>(0)) return Block2<T>::identity();
  return {conj(f) / r, conj(g) / r, -g / r, f / r};
}

/// One Givens rotation per pair, acting on rows (p, n-1-p), zeroes the
/// anti-diagonal entry below the diagonal. The second row of each rotation
/// is rescaled by a unit-modulus factor so R has a real nonnegative
/// diagonal; Q = G_1* ... G_k* is assembled pair by pair.
template <Scalar T>
CrossQR<T> qr(const CrossMatrix<T>& x) {
  const std::size_t n = x.order();
  const std::size_t k = x.pairs();
  std::vector<Block2<T>> qb(k), rb(k);
  for (std::size_t p = 0; p < k; ++p) {
    const Block2<T> b = x.block_unchecked(p);
    Block2<T> g = givens(b.a, b.c);
    Block2<T> r = g * b;
    r.a = T(std::hypot(abs(b.a), abs(b.c)));
    r.c = T(0);
    const T ph = conj(phase(r.d));
    g.c *= ph;
    g.d *= ph;
    r.d = T(abs(r.d));
    qb[p] = g.conj_transpose();
    rb[p] = r;
  }
  std::optional<T> qc, rc;
  if (x.has_center()) {
    qc = phase(x.center());
    rc = T(abs(x.center()));
  }
  return {CrossMatrix<T>::from_blocks(n, qb, qc), CrossMatrix<T>::from_blocks(n, rb, rc)};
}

// ---------------------------------------------------------------------------
// Spectral decomposition
// ---------------------------------------------------------------------------

/// X V = V diag(D) with V a cross matrix. D is pair-aligned like
/// eigenvalues(); column j of V has unit 2-norm and its first nonzero
/// component is real positive.
template <Scalar T>
struct SpectralDecomp {
  CrossMatrix<T> V;
  std::vector<T> D;
};

namespace detail {
// Null vector of B - lambda I, taken from whichever row gives the longer
// candidate.
template <Scalar T>
std::pair<T, T> block_eigenvector(const Block2<T>& b, const T& lambda) {
  const T u0 = b.b, u1 = lambda - b.a;
  const T w0 = lambda - b.d, w1 = b.c;
  if (abs2(u0) + abs2(u1) >= abs2(w0) + abs2(w1)) return {u0, u1};
  return {w0, w1};
}

template <Scalar T>
std::pair<T, T> normalize_vector(std::pair<T, T> v) {
  const real_t<T> nrm = std::hypot(abs(v.first), abs(v.second));
  if (nrm == real_t<T>(0)) return v;
  const T lead = v.first != T(0) ? v.first : v.second;
  const T s = conj(phase(lead)) / nrm;
  std::pair<T, T> out{s * v.first, s * v.second};
  if (v.first != T(0)) out.first = T(abs(v.first) / nrm);
  else out.second = T(abs(v.second) / nrm);
  return out;
}
}  // namespace detail

template <Scalar T>
SpectralDecomp<T> spectral(const CrossMatrix<T>& x) {
  using R = real_t<T>;
  const std::size_t n = x.order();
  const std::size_t k = x.pairs();
  const R theta = std::sqrt(epsilon<T>());
  std::vector<Block2<T>> vb(k);
  std::vector<T> d(n);
  for (std::size_t p = 0; p < k; ++p) {
    const Block2<T> b = x.block_unchecked(p);
    const std::size_t q = n - 1 - p;
    if (b.b == T(0) && b.c == T(0)) {
      vb[p] = Block2<T>::identity();
      d[p] = b.a;
      d[q] = b.d;
      continue;
    }
    const auto [z1, z2] = block_eigenvalues(b);
    if constexpr (!is_complex_v<T>) {
      if (z1.imag() != R(0) || z2.imag() != R(0)) {
        throw Error(ErrorKind::ComplexEigenvalues,
                    "pair " + std::to_string(p + 1) +
                        " has complex eigenvalues; use the complex scalar type",
                    p + 1);
      }
    }
    const T l1 = from_complex<T>(z1), l2 = from_complex<T>(z2);
    const R bn = b.frobenius();
    const bool confluent = abs(l1 - l2) <= theta * bn;
    const T mu = (l1 + l2) / R(2);
    const Block2<T> shifted = b - mu * Block2<T>::identity();
    if (confluent && shifted.frobenius() <= R(4) * epsilon<T>() * bn) {
      // Scalar to roundoff: every vector is an eigenvector.
      vb[p] = Block2<T>::identity();
      d[p] = b.a;
      d[q] = b.d;
      continue;
    }
    const auto v1 = detail::normalize_vector(detail::block_eigenvector(b, l1));
    const auto v2 = detail::normalize_vector(detail::block_eigenvector(b, l2));
    const Block2<T> v{v1.first, v2.first, v1.second, v2.second};
    if (confluent && abs(v.det()) <= theta) {
      throw Error(ErrorKind::NotDiagonalizable,
                  "pair block " + std::to_string(p + 1) +
                      " has a repeated eigenvalue with one eigenvector",
                  p + 1);
    }
    vb[p] = v;
    d[p] = l1;
    d[q] = l2;
  }
  std::optional<T> vc;
  if (x.has_center()) {
    vc = T(1);
    d[n / 2] = x.center();
  }
  return {CrossMatrix<T>::from_blocks(n, vb, vc), std::move(d)};
}

// ---------------------------------------------------------------------------
// SVD and polar decomposition
// ---------------------------------------------------------------------------

/// X = U diag(S) V* with U, V unitary cross matrices. S is pair-aligned:
/// S[p] >= S[n-1-p] for each pair p, and the center value sits at n/2.
template <Scalar T>
struct CrossSVD {
  CrossMatrix<T> U;
  std::vector<real_t<T>> S;
  CrossMatrix<T> V;
};

/// SVD of one 2x2 block: B = U diag(s1, s2) V*, s1 >= s2 >= 0.
template <Scalar T>
struct Svd2 {
  Block2<T> U;
  real_t<T> s1, s2;
  Block2<T> V;
};

namespace detail {
template <typename R>
Block2<R> rotation(R angle) {
  const R c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

// Real closed form: B = Rot(phi) diag(sx, sy) Rot(theta), with
// sx = (|(a+d, c-b)| + |(a-d, c+b)|) / 2 and sx * sy = det(B).
template <typename R>
Svd2<R> svd2_real(const Block2<R>& b) {
  const R e = (b.a + b.d) / 2, f = (b.a - b.d) / 2;
  const R g = (b.c + b.b) / 2, h = (b.c - b.b) / 2;
  const R q = std::hypot(e, h), r = std::hypot(f, g);
  const R sx = q + r;
  R sy = sx > R(0) ? b.det() / sx : R(0);
  const R a1 = std::atan2(g, f), a2 = std::atan2(h, e);
  Block2<R> u = rotation((a2 + a1) / 2);
  const Block2<R> v = rotation((a2 - a1) / 2).transpose();
  if (sy < R(0)) {
    sy = -sy;
    u.b = -u.b;
    u.d = -u.d;
  }
  return {u, sx, sy, v};
}

// Complex blocks: a left rotation makes B upper triangular, two diagonal
// phase factors make the triangle real, then the real closed form applies.
template <typename R>
Svd2<std::complex<R>> svd2_complex(const Block2<std::complex<R>>& b) {
  using C = std::complex<R>;
  const Block2<C> g = givens(b.a, b.c);
  const Block2<C> t = g * b;
  const C pr = conj(phase(t.b));                  // right phase on column 2
  const C pl = conj(phase(t.d)) * phase(t.b);     // left phase on row 2
  const Block2<R> m{std::hypot(abs(b.a), abs(b.c)), abs(t.b), R(0), abs(t.d)};
  const Svd2<R> s = svd2_real(m);
  auto lift = [](const Block2<R>& x) { return Block2<C>{x.a, x.b, x.c, x.d}; };
  // B = g* dl* M dr*, dl = diag(1, pl), dr = diag(1, pr).
  const Block2<C> dl_star{C(1), C(0), C(0), std::conj(pl)};
  const Block2<C> dr{C(1), C(0), C(0), pr};
  return {g.conj_transpose() * dl_star * lift(s.U), s.s1, s.s2, dr * lift(s.V)};
}
}  // namespace detail

template <Scalar T>
Svd2<T> svd2(const Block2<T>& b) {
  if constexpr (is_complex_v<T>) {
    return detail::svd2_complex(b);
  } else {
    return detail::svd2_real(b);
  }
}

/// SVD through the block-diagonal form: a closed-form 2x2 SVD per block,
/// |center| with its phase moved into U, then the permutation is undone.
template <Scalar T>
CrossSVD<T> svd(const CrossMatrix<T>& x) {
  using R = real_t<T>;
  const BlockDiagonalForm<T> form = block_diagonalize(x);
  BlockDiagonalForm<T> uf = form, sf = form, vf = form;

  auto factor = [](const Block2<T>& b, bool flipped, Block2<T>& u, Block2<T>& s,
                   Block2<T>& v) {
    Svd2<T> r = svd2(b);
    if (flipped) {
      // C blocks list the high index first; order the singular values
      // ascending so the larger lands on the low index after unflipping.
      // Ties need no swap.
      if (r.s1 == r.s2) {
        u = r.U;
        s = Block2<T>::diagonal(T(r.s1), T(r.s2));
        v = r.V;
        return;
      }
      std::swap(r.U.a, r.U.b);
      std::swap(r.U.c, r.U.d);
      std::swap(r.V.a, r.V.b);
      std::swap(r.V.c, r.V.d);
      std::swap(r.s1, r.s2);
    }
    u = r.U;
    s = Block2<T>::diagonal(T(r.s1), T(r.s2));
    v = r.V;
  };
  for (std::size_t i = 0; i < form.b_blocks.size(); ++i)
    factor(form.b_blocks[i], false, uf.b_blocks[i], sf.b_blocks[i], vf.b_blocks[i]);
  for (std::size_t i = 0; i < form.c_blocks.size(); ++i)
    factor(form.c_blocks[i], true, uf.c_blocks[i], sf.c_blocks[i], vf.c_blocks[i]);
  if (form.mid_block) factor(*form.mid_block, false, *uf.mid_block, *sf.mid_block, *vf.mid_block);
  if (form.center) {
    uf.center = phase(*form.center);
    sf.center = T(abs(*form.center));
    vf.center = T(1);
  }

  const CrossMatrix<T> sigma = reconstruct(sf);
  std::vector<R> s(x.order());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = real_part(sigma.diag()[i]);
  return {reconstruct(uf), std::move(s), reconstruct(vf)};
}

/// Singular values by descending value, each with its pair-aligned index.
template <Scalar T>
std::vector<std::pair<real_t<T>, std::size_t>> sorted_singular_values(const CrossSVD<T>& s) {
  return sorted_by_magnitude(s.S);
}

/// X = U H with U unitary and H Hermitian positive semidefinite, both cross.
template <Scalar T>
struct PolarDecomp {
  CrossMatrix<T> U;
  CrossMatrix<T> H;
};

/// Polar factors from the SVD: U = U_s V_s*, H = V_s diag(S) V_s*. H is
/// made exactly Hermitian by averaging each mirrored entry pair.
template <Scalar T>
PolarDecomp<T> polar(const CrossMatrix<T>& x) {
  const CrossSVD<T> s = svd(x);
  const std::size_t n = x.order();
  const CrossMatrix<T> vh = conj_transpose(s.V);
  std::vector<T> sd(s.S.begin(), s.S.end());
  const CrossMatrix<T> h = s.V * CrossMatrix<T>::diagonal(std::move(sd)) * vh;
  std::vector<T> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = T(real_part(h.diag()[i]));
  for (std::size_t p = 0; p < n / 2; ++p) {
    const T m = (h.anti()[p] + conj(h.anti()[n - 1 - p])) / real_t<T>(2);
    anti[p] = m;
    anti[n - 1 - p] = conj(m);
  }
  if (n % 2 == 1) anti[n / 2] = diag[n / 2];
  return {s.U * vh, CrossMatrix<T>(n, std::move(diag), std::move(anti))};
}

}  // namespace crossmat
