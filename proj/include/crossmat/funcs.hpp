#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "crossmat/linalg.hpp"
#include "crossmat/structure.hpp"

namespace crossmat {

/// Scalar function evaluated on eigenvalues. Evaluation is always complex so
/// real matrices with complex-conjugate eigenvalue pairs are handled; `df`
/// is only consulted for blocks with (nearly) repeated eigenvalues.
template <typename R>
struct ScalarFunction {
  using complex_type = std::complex<R>;
  std::function<complex_type(complex_type)> f;
  std::function<complex_type(complex_type)> df;  // optional
  std::string name;
};

namespace detail {

template <typename R>
std::string format_value(const std::complex<R>& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != R(0)) os << (z.imag() < R(0) ? "" : "+") << z.imag() << "i";
  return os.str();
}

template <typename R>
std::complex<R> evaluate(const std::function<std::complex<R>(std::complex<R>)>& f,
                         const std::complex<R>& z, const std::string& name) {
  const std::complex<R> v = f(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorKind::DomainError, name + " is undefined at eigenvalue " + format_value(z));
  }
  return v;
}

template <Scalar T>
Block2<complex_t<T>> to_complex(const Block2<T>& b) {
  using C = complex_t<T>;
  return {C(b.a), C(b.b), C(b.c), C(b.d)};
}

// f(B) for one 2x2 block. Distinct eigenvalues use the two-point
// interpolation formula; when |l1 - l2| <= sqrt(eps) |B|_F the first-order
// Hermite form f(mu) I + f'(mu) (B - mu I) at the midpoint is used instead.
template <typename R>
Block2<std::complex<R>> block_function(const Block2<std::complex<R>>& b,
                                       const ScalarFunction<R>& g) {
  using C = std::complex<R>;
  const auto [l1, l2] = block_eigenvalues(b);
  const Block2<C> id = Block2<C>::identity();
  const R theta = std::sqrt(std::numeric_limits<R>::epsilon());
  if (std::abs(l1 - l2) > theta * b.frobenius()) {
    const C f1 = evaluate(g.f, l1, g.name);
    const C f2 = evaluate(g.f, l2, g.name);
    const C inv = C(1) / (l1 - l2);
    return (inv * f1) * (b - l2 * id) - (inv * f2) * (b - l1 * id);
  }
  const C mu = (l1 + l2) / R(2);
  const Block2<C> shifted = b - mu * id;
  const C fm = evaluate(g.f, mu, g.name);
  if (shifted == Block2<C>{}) return fm * id;
  if (!g.df) {
    throw Error(ErrorKind::DerivativeRequired,
                g.name + ": repeated eigenvalue " + format_value(mu) + " needs a derivative");
  }
  const C dm = evaluate(g.df, mu, g.name + "'");
  return fm * id + dm * shifted;
}

// Converts a complex result back to T; for real T the imaginary residue must
// be roundoff relative to the values involved.
template <Scalar T>
T narrow(const complex_t<T>& z, real_t<T> scale, const std::string& name) {
  if constexpr (!is_complex_v<T>) {
    if (std::abs(z.imag()) > std::sqrt(epsilon<T>()) * std::max(scale, real_t<T>(1))) {
      throw Error(ErrorKind::DomainError, name + " is not real-valued on this real matrix");
    }
  }
  return from_complex<T>(z);
}

template <Scalar T>
Block2<T> narrow(const Block2<complex_t<T>>& b, const std::string& name) {
  const real_t<T> scale = b.max_abs();
  return {narrow<T>(b.a, scale, name), narrow<T>(b.b, scale, name),
          narrow<T>(b.c, scale, name), narrow<T>(b.d, scale, name)};
}

}  // namespace detail

/// f(X) computed on the block-diagonal form: each 2x2 block and the center
/// are mapped independently and the permutation is undone. The result is a
/// cross matrix exactly.
template <Scalar T>
CrossMatrix<T> apply(const CrossMatrix<T>& x, const ScalarFunction<real_t<T>>& g) {
  BlockDiagonalForm<T> form = block_diagonalize(x);
  auto map = [&](Block2<T>& b) {
    b = detail::narrow<T>(detail::block_function(detail::to_complex(b), g), g.name);
  };
  for (auto& b : form.b_blocks) map(b);
  for (auto& c : form.c_blocks) map(c);
  if (form.mid_block) map(*form.mid_block);
  if (form.center) {
    const auto v = detail::evaluate(g.f, complex_t<T>(*form.center), g.name);
    form.center = detail::narrow<T>(v, std::abs(v), g.name);
  }
  return reconstruct(form);
}

template <typename R>
ScalarFunction<R> exp_function() {
  using C = std::complex<R>;
  return {[](C z) { return std::exp(z); }, [](C z) { return std::exp(z); }, "exp"};
}

template <typename R>
ScalarFunction<R> log_function() {
  using C = std::complex<R>;
  return {[](C z) { return std::log(z); }, [](C z) { return C(1) / z; }, "log"};
}

template <typename R>
ScalarFunction<R> sqrt_function() {
  using C = std::complex<R>;
  return {[](C z) { return std::sqrt(z); },
          [](C z) { return C(R(1) / R(2)) / std::sqrt(z); }, "sqrt"};
}

/// z^p on the principal branch, exp(p log z).
template <typename R>
ScalarFunction<R> pow_function(R p) {
  using C = std::complex<R>;
  return {[p](C z) { return std::exp(p * std::log(z)); },
          [p](C z) { return p * std::exp((p - R(1)) * std::log(z)); }, "pow"};
}

namespace detail {
// Principal branches for real matrices need eigenvalues off the closed
// negative real axis; complex matrices need them away from zero unless
// allow_zero_for_complex is set.
template <Scalar T>
void require_principal_domain(const CrossMatrix<T>& x, const std::string& name,
                              bool allow_zero_for_complex) {
  for (const auto& z : eigenvalues_complex(x)) {
    bool bad;
    if constexpr (is_complex_v<T>) {
      bad = !allow_zero_for_complex && z == complex_t<T>(0);
    } else {
      bad = z.imag() == real_t<T>(0) && z.real() <= real_t<T>(0);
    }
    if (bad) {
      throw Error(ErrorKind::DomainError,
                  name + ": eigenvalue " + format_value(z) + " is outside the principal domain");
    }
  }
}
}  // namespace detail

template <Scalar T>
CrossMatrix<T> expm(const CrossMatrix<T>& x) {
  return crossmat::apply(x, exp_function<real_t<T>>());
}

template <Scalar T>
CrossMatrix<T> logm(const CrossMatrix<T>& x) {
  detail::require_principal_domain(x, "log", false);
  return crossmat::apply(x, log_function<real_t<T>>());
}

template <Scalar T>
CrossMatrix<T> sqrtm(const CrossMatrix<T>& x) {
  detail::require_principal_domain(x, "sqrt", true);
  return crossmat::apply(x, sqrt_function<real_t<T>>());
}

template <Scalar T>
CrossMatrix<T> powm(const CrossMatrix<T>& x, real_t<T> p) {
  detail::require_principal_domain(x, "pow", false);
  return crossmat::apply(x, pow_function<real_t<T>>(p));
}

/// X^m by binary powering over the structured product; X^0 = I.
template <Scalar T>
CrossMatrix<T> power(const CrossMatrix<T>& x, std::uint64_t m) {
  CrossMatrix<T> result = CrossMatrix<T>::identity(x.order());
  CrossMatrix<T> base = x;
  while (m > 0) {
    if (m & 1u) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

}  // namespace crossmat
