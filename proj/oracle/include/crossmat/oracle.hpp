#pragma once

// Dense reference implementations. Slow, simple, and independent of the
// structured code paths: nothing here reads CrossMatrix, only DenseMatrix.
// Every routine that iterates or factors checks its own residual and throws
// ConvergenceFailure instead of returning an uncertified answer.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "crossmat/dense.hpp"
#include "crossmat/error.hpp"
#include "crossmat/scalar.hpp"

namespace crossmat::oracle {

template <Scalar T>
using Dense = DenseMatrix<T>;

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

inline void certify(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ConvergenceFailure, "oracle certificate failed: " + what);
}
}  // namespace detail

template <Scalar T>
Dense<T> dense_mul(const Dense<T>& a, const Dense<T>& b) {
  detail::require(a.cols() == b.rows(), "dense_mul: inner dimensions differ");
  Dense<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <Scalar T>
Dense<T> dense_sub(const Dense<T>& a, const Dense<T>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "dense_sub: shapes differ");
  Dense<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <Scalar T>
Dense<T> dense_add(const Dense<T>& a, const Dense<T>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "dense_add: shapes differ");
  Dense<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <Scalar T>
Dense<T> dense_scale(const T& s, const Dense<T>& a) {
  Dense<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <Scalar T>
Dense<T> adjoint(const Dense<T>& a) {
  Dense<T> c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = conj(a(i, j));
  return c;
}

template <Scalar T>
Dense<T> diagonal_matrix(const std::vector<T>& d) {
  Dense<T> c(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c(i, i) = d[i];
  return c;
}

template <Scalar T>
real_t<T> max_abs_diff(const Dense<T>& a, const Dense<T>& b) {
  return dense_sub(a, b).max_abs();
}

/// max |A* A - I|.
template <Scalar T>
real_t<T> unitarity_defect(const Dense<T>& a) {
  return max_abs_diff(dense_mul(adjoint(a), a), Dense<T>::identity(a.cols()));
}

// ---------------------------------------------------------------------------
// LU with partial pivoting: det, solve, inverse, minors
// ---------------------------------------------------------------------------

template <Scalar T>
struct DenseLU {
  Dense<T> lu;                  // unit L below the diagonal, U on and above
  std::vector<std::size_t> piv; // row i of PA is row piv[i] of A
  int sign = 1;
  bool singular = false;
};

template <Scalar T>
DenseLU<T> dense_lu(const Dense<T>& a) {
  detail::require(a.square(), "dense_lu: not square");
  const std::size_t n = a.rows();
  DenseLU<T> f{a, std::vector<std::size_t>(n), 1, false};
  for (std::size_t i = 0; i < n; ++i) f.piv[i] = i;
  Dense<T>& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(m(i, k)) > abs(m(best, k))) best = i;
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(best, j));
      std::swap(f.piv[k], f.piv[best]);
      f.sign = -f.sign;
    }
    if (m(k, k) == T(0)) {
      f.singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = m(i, k) / m(k, k);
      m(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

template <Scalar T>
T dense_det(const Dense<T>& a) {
  const DenseLU<T> f = dense_lu(a);
  if (f.singular) return T(0);
  T d(f.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

namespace detail {
template <Scalar T>
std::vector<T> lu_substitute(const DenseLU<T>& f, const std::vector<T>& b) {
  const std::size_t n = b.size();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    T s = b[f.piv[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    T s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}
}  // namespace detail

template <Scalar T>
std::vector<T> dense_solve(const Dense<T>& a, const std::vector<T>& b) {
  detail::require(b.size() == a.rows(), "dense_solve: rhs length");
  const DenseLU<T> f = dense_lu(a);
  if (f.singular) throw Error(ErrorKind::Singular, "dense_solve: zero pivot");
  return detail::lu_substitute(f, b);
}

template <Scalar T>
Dense<T> dense_inverse(const Dense<T>& a) {
  const std::size_t n = a.rows();
  const DenseLU<T> f = dense_lu(a);
  if (f.singular) throw Error(ErrorKind::Singular, "dense_inverse: zero pivot");
  Dense<T> inv(n, n);
  std::vector<T> e(n, T(0));
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = T(1);
    const auto x = detail::lu_substitute(f, e);
    e[c] = T(0);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

/// det of A with row `row` and column `col` removed.
template <Scalar T>
T dense_minor(const Dense<T>& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.rows();
  if (n == 1) return T(1);
  Dense<T> s(n - 1, n - 1);
  for (std::size_t i = 0, si = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, sj = 0; j < n; ++j) {
      if (j == col) continue;
      s(si, sj++) = a(i, j);
    }
    ++si;
  }
  return dense_det(s);
}

/// Adjugate from cofactors: adj(i, j) = (-1)^(i+j) minor(j, i).
template <Scalar T>
Dense<T> dense_adjugate(const Dense<T>& a) {
  const std::size_t n = a.rows();
  Dense<T> adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const T m = dense_minor(a, j, i);
      adj(i, j) = ((i + j) % 2 == 0) ? m : -m;
    }
  return adj;
}

/// Upper R with A = R* R (textbook Cholesky-Banachiewicz).
template <Scalar T>
Dense<T> dense_cholesky(const Dense<T>& a) {
  const std::size_t n = a.rows();
  Dense<T> r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    real_t<T> d = real_part(a(j, j));
    for (std::size_t k = 0; k < j; ++k) d -= abs2(r(k, j));
    if (!(d > 0)) throw Error(ErrorKind::NotPositiveDefinite, "dense_cholesky");
    r(j, j) = T(std::sqrt(d));
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(j, i);
      for (std::size_t k = 0; k < j; ++k) s -= conj(r(k, j)) * r(k, i);
      r(j, i) = s / r(j, j);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// QR, SVD, eigenvalues, expm, polar
// ---------------------------------------------------------------------------

template <Scalar T>
struct DenseQR {
  Dense<T> Q, R;
};

/// Givens QR, column by column from the bottom up; R gets a real
/// nonnegative diagonal.
template <Scalar T>
DenseQR<T> dense_qr(const Dense<T>& a) {
  const std::size_t n = a.rows();
  detail::require(a.square(), "dense_qr: not square");
  Dense<T> r = a;
  Dense<T> qh = Dense<T>::identity(n);  // accumulates Q*
  auto rotate_rows = [](Dense<T>& m, std::size_t i, std::size_t k, const T g[4]) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const T x = m(i, j), y = m(k, j);
      m(i, j) = g[0] * x + g[1] * y;
      m(k, j) = g[2] * x + g[3] * y;
    }
  };
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = n; i-- > j + 1;) {
      const T f = r(i - 1, j), h = r(i, j);
      if (h == T(0)) continue;
      const real_t<T> rr = std::hypot(abs(f), abs(h));
      const T g[4] = {conj(f) / rr, conj(h) / rr, -h / rr, f / rr};
      rotate_rows(r, i - 1, i, g);
      rotate_rows(qh, i - 1, i, g);
      r(i, j) = T(0);
    }
    const T ph = phase(r(j, j));
    for (std::size_t c = 0; c < n; ++c) {
      r(j, c) = conj(ph) * r(j, c);
      qh(j, c) = conj(ph) * qh(j, c);
    }
    r(j, j) = T(real_part(r(j, j)));
  }
  DenseQR<T> out{adjoint(qh), r};
  const real_t<T> tol = real_t<T>(1e-12) * std::max(real_t<T>(1), a.frobenius());
  detail::certify(max_abs_diff(dense_mul(out.Q, out.R), a) <= tol, "dense_qr residual");
  detail::certify(unitarity_defect(out.Q) <= real_t<T>(1e-12), "dense_qr unitarity");
  return out;
}

template <Scalar T>
struct DenseSVD {
  Dense<T> U;
  std::vector<real_t<T>> S;  // descending
  Dense<T> V;
};

/// One-sided Jacobi: rotate column pairs of A V until mutually orthogonal.
template <Scalar T>
DenseSVD<T> dense_svd(const Dense<T>& a) {
  using R = real_t<T>;
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  Dense<T> w = a;
  Dense<T> v = Dense<T>::identity(n);
  const R eps = std::numeric_limits<R>::epsilon();
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        R app = 0, aqq = 0;
        T apq(0);
        for (std::size_t i = 0; i < m; ++i) {
          app += abs2(w(i, p));
          aqq += abs2(w(i, q));
          apq += conj(w(i, p)) * w(i, q);
        }
        const R g = abs(apq);
        if (g == R(0) || g <= eps * std::sqrt(app * aqq)) continue;
        converged = false;
        // Hermitian 2x2 [[app, apq], [conj(apq), aqq]] diagonalized by a
        // rotation with the phase of apq folded into the sine.
        const T ph = apq / g;
        const R zeta = (aqq - app) / (2 * g);
        const R t = std::copysign(R(1), zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const R c = 1 / std::sqrt(1 + t * t);
        const R s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const T xp = w(i, p), xq = w(i, q);
          w(i, p) = c * xp - s * conj(ph) * xq;
          w(i, q) = s * ph * xp + c * xq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const T xp = v(i, p), xq = v(i, q);
          v(i, p) = c * xp - s * conj(ph) * xq;
          v(i, q) = s * ph * xp + c * xq;
        }
      }
  }
  detail::certify(converged, "dense_svd did not converge");

  std::vector<std::pair<R, std::size_t>> order(n);
  for (std::size_t j = 0; j < n; ++j) {
    R s = 0;
    for (std::size_t i = 0; i < m; ++i) s += abs2(w(i, j));
    order[j] = {std::sqrt(s), j};
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  DenseSVD<T> out{Dense<T>(m, n), std::vector<R>(n), Dense<T>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto [s, j] = order[k];
    out.S[k] = s;
    for (std::size_t i = 0; i < m; ++i) out.U(i, k) = s > 0 ? w(i, j) / s : T(i == k ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) out.V(i, k) = v(i, j);
  }
  std::vector<T> sd(out.S.begin(), out.S.end());
  const Dense<T> rec = dense_mul(dense_mul(out.U, diagonal_matrix(sd)), adjoint(out.V));
  detail::certify(max_abs_diff(rec, a) <= R(1e-12) * std::max(R(1), a.frobenius()),
                  "dense_svd residual");
  return out;
}

/// Eigenvalues via Eigen's complex Schur-based solver, certified by the
/// eigenpair residuals.
template <Scalar T>
std::vector<complex_t<T>> dense_eig(const Dense<T>& a) {
  using R = real_t<T>;
  using C = std::complex<R>;
  const std::size_t n = a.rows();
  detail::require(a.square(), "dense_eig: not square");
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = C(a(i, j));
  Eigen::ComplexEigenSolver<decltype(m)> solver(m, true);
  detail::certify(solver.info() == Eigen::Success, "dense_eig did not converge");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const R scale = std::max(R(1), a.frobenius());
  for (std::size_t j = 0; j < n; ++j) {
    const R res = (m * vecs.col(j) - vals(j) * vecs.col(j)).norm();
    detail::certify(res <= R(1e-12) * scale * vecs.col(j).norm(), "dense_eig residual");
  }
  std::vector<C> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = vals(i);
  return out;
}

/// Scaling and squaring around a truncated Taylor series.
template <Scalar T>
Dense<T> dense_expm(const Dense<T>& a) {
  using R = real_t<T>;
  const std::size_t n = a.rows();
  auto taylor = [n](const Dense<T>& x) {
    Dense<T> sum = Dense<T>::identity(n);
    Dense<T> term = Dense<T>::identity(n);
    for (int k = 1; k <= 30; ++k) {
      term = dense_scale(T(R(1) / R(k)), dense_mul(term, x));
      sum = dense_add(sum, term);
      if (term.max_abs() <= std::numeric_limits<R>::epsilon() * sum.max_abs() * R(1e-2)) break;
    }
    return sum;
  };
  auto expm = [&](const Dense<T>& x) {
    R norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      R row = 0;
      for (std::size_t j = 0; j < n; ++j) row += abs(x(i, j));
      norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > R(0.5)) {
      norm /= 2;
      ++s;
    }
    Dense<T> e = taylor(dense_scale(T(std::ldexp(R(1), -s)), x));
    for (int i = 0; i < s; ++i) e = dense_mul(e, e);
    return e;
  };
  const Dense<T> e = expm(a);
  const Dense<T> f = expm(dense_scale(T(-1), a));
  const R defect = max_abs_diff(dense_mul(e, f), Dense<T>::identity(n));
  detail::certify(defect <= R(1e-10) * std::max(R(1), e.max_abs() * f.max_abs()),
                  "dense_expm e^A e^-A != I");
  return e;
}

template <Scalar T>
struct DensePolar {
  Dense<T> U, H;
};

/// Newton iteration U <- (U + U^{-*}) / 2 from U = A; nonsingular A only.
template <Scalar T>
DensePolar<T> dense_polar(const Dense<T>& a) {
  using R = real_t<T>;
  Dense<T> u = a;
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const Dense<T> next = dense_scale(T(R(0.5)), dense_add(u, adjoint(dense_inverse(u))));
    const R change = max_abs_diff(next, u);
    u = next;
    if (change <= R(1e-15) * std::max(R(1), u.max_abs())) {
      converged = true;
      break;
    }
  }
  detail::certify(converged, "dense_polar did not converge");
  Dense<T> h = dense_mul(adjoint(u), a);
  h = dense_scale(T(R(0.5)), dense_add(h, adjoint(h)));
  const R scale = std::max(R(1), a.frobenius());
  detail::certify(max_abs_diff(dense_mul(u, h), a) <= R(1e-11) * scale, "dense_polar residual");
  detail::certify(unitarity_defect(u) <= R(1e-12), "dense_polar unitarity");
  return {u, h};
}

// ---------------------------------------------------------------------------
// Multiset comparison
// ---------------------------------------------------------------------------

/// Minimum-cost perfect matching between two equally sized value lists
/// with cost |a_i - b_j| (Hungarian algorithm). Returns assignment[i] = j.
template <typename V>
std::vector<std::size_t> min_cost_matching(const std::vector<V>& a, const std::vector<V>& b) {
  const std::size_t n = a.size();
  detail::require(b.size() == n, "min_cost_matching: sizes differ");
  using R = double;
  const R inf = std::numeric_limits<R>::infinity();
  // 1-based potentials formulation.
  std::vector<R> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  auto cost = [&](std::size_t i, std::size_t j) {
    return static_cast<R>(std::abs(a[i - 1] - b[j - 1]));
  };
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<R> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      R delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const R cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

/// Largest |a_i - b_match(i)| under the minimum-cost matching.
template <typename V>
double matched_max_deviation(const std::vector<V>& a, const std::vector<V>& b) {
  const auto m = min_cost_matching(a, b);
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, static_cast<double>(std::abs(a[i] - b[m[i]])));
  return worst;
}

}  // namespace crossmat::oracle
