#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace crossmat;
using namespace crossmat::testing;

namespace {

ScalarFunction<double> polynomial(const std::vector<C>& coeffs) {
  auto f = [coeffs](C z) {
    C acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  auto df = [coeffs](C z) {
    C acc(0);
    for (std::size_t j = coeffs.size(); j-- > 1;) acc = acc * z + double(j) * coeffs[j];
    return acc;
  };
  return {f, df, "poly"};
}

template <Scalar T>
CrossMatrix<T> polynomial_by_powers(const CrossMatrix<T>& x, const std::vector<C>& coeffs) {
  CrossMatrix<T> sum = CrossMatrix<T>::zero(x.order());
  for (std::size_t j = 0; j < coeffs.size(); ++j) sum = sum + from_complex<T>(coeffs[j]) * power(x, j);
  return sum;
}

template <Scalar T>
ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ConvergenceFailure;
}

// Eigenvalues of a random real X scaled into the disc |z - 2| < 1.
CrossMatrix<double> shifted_into_right_half(const CrossMatrix<double>& z) {
  const double r = std::max(1e-300, 2.0 * max_abs(z));
  return (0.8 / r) * z + 2.0 * CrossMatrix<double>::identity(z.order());
}

}  // namespace

TEST(Apply, DiagonalIsElementwise) {
  const auto x = CrossMatrix<double>::diagonal({0.5, -1, 2, 0, 3});
  const auto e = expm(x);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(e.diag()[i], std::exp(x.diag()[i]), 1e-15 * std::exp(3.0));
  EXPECT_TRUE(exactly_cross(to_dense(e)));
}

TEST(Apply, ExchangeGivesHyperbolic) {
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto e = expm(CrossMatrix<double>::exchange(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (n % 2 == 1 && i == n / 2) {
        EXPECT_NEAR(e.center(), std::exp(1.0), 1e-12);
        continue;
      }
      EXPECT_NEAR(e.diag()[i], std::cosh(1.0), 1e-12) << n;
      EXPECT_NEAR(e.anti()[i], std::sinh(1.0), 1e-12) << n;
    }
  }
  const auto e = expm(CrossMatrix<double>::exchange(2));
  EXPECT_NEAR(e(0, 0), 1.5430806348, 1e-10);
  EXPECT_NEAR(e(0, 1), 1.1752011936, 1e-10);
}

TEST(Apply, ExpMatchesDenseOracle) {
  std::mt19937_64 rng(40);
  const auto x = random_cross<double>(5, rng);
  const auto ref = oracle::dense_expm(to_dense(x));
  EXPECT_LE(max_diff(to_dense(expm(x)), ref), 1e-9 * ref.max_abs());
}

TEST(Apply, ComplexEigenvaluesOfRealInput) {
  // Rotation generator: exp gives a rotation by 1 radian.
  const CrossMatrix<double> x(2, {0, 0}, {-1, 1});
  const auto e = expm(x);
  EXPECT_NEAR(e(0, 0), std::cos(1.0), 1e-15);
  EXPECT_NEAR(e(0, 1), -std::sin(1.0), 1e-15);
  EXPECT_NEAR(e(1, 0), std::sin(1.0), 1e-15);
}

TEST(Sqrtm, Examples) {
  EXPECT_EQ(sqrtm(4.0 * CrossMatrix<double>::identity(6)), 2.0 * CrossMatrix<double>::identity(6));
  EXPECT_LE(max_diff(sqrtm(CrossMatrix<double>::diagonal({9, 4})), CrossMatrix<double>::diagonal({3, 2})), 1e-15);
  // Jordan block: sqrt([[4,1],[0,4]]) = [[2,1/4],[0,2]].
  const auto s = sqrtm(CrossMatrix<double>(2, {4, 4}, {1, 0}));
  EXPECT_NEAR(s(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(s(0, 1), 0.25, 1e-15);
  EXPECT_EQ(s(1, 0), 0.0);
}

TEST(Sqrtm, SquaredResidual) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto x = shifted_into_right_half(random_cross<double>(n, rng));
    const auto s = sqrtm(x);
    EXPECT_LE(max_abs(s * s - x), 1e-10 * max_abs(x)) << n;
    const auto z = random_cross<C>(n, rng);
    const auto sz = sqrtm(z);
    EXPECT_LE(max_abs(sz * sz - z), 1e-10 * std::max(1.0, max_abs(z))) << n;
  }
}

TEST(Logm, RoundTrip) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = 0.3 * random_cross<double>(4, rng);
    EXPECT_LE(max_abs(logm(expm(x)) - x), 1e-9);
    const auto y = shifted_into_right_half(random_cross<double>(4, rng));
    EXPECT_LE(max_abs(expm(logm(y)) - y), 1e-9 * max_abs(y));
  }
}

TEST(Powm, AgreesWithIntegerPower) {
  std::mt19937_64 rng(43);
  const auto x = shifted_into_right_half(random_cross<double>(7, rng));
  EXPECT_LE(max_abs(powm(x, 3.0) - power(x, 3)), 1e-11 * max_abs(power(x, 3)));
  const auto h = powm(x, 0.5);
  EXPECT_LE(max_abs(h - sqrtm(x)), 1e-12);
}

TEST(Power, Examples) {
  const CrossMatrix<double> x(3, {1, 2, 3}, {4, 2, 5});
  EXPECT_EQ(power(x, 0), CrossMatrix<double>::identity(3));
  EXPECT_EQ(power(CrossMatrix<double>::exchange(2), 2), CrossMatrix<double>::identity(2));
  const auto d = to_dense(x);
  const auto cube = oracle::dense_mul(oracle::dense_mul(d, d), d);
  EXPECT_EQ(to_dense(power(x, 3)), cube);
  EXPECT_EQ(power(x, 1), x);
}

TEST(Domain, Errors) {
  const auto neg = CrossMatrix<double>::diagonal({1, -1});
  EXPECT_EQ(kind_of<double>([&] { logm(neg); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of<double>([&] { sqrtm(neg); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of<double>([&] { powm(neg, 0.5); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of<double>([&] { logm(CrossMatrix<double>::zero(3)); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of<C>([&] { logm(CrossMatrix<C>::zero(2)); }), ErrorKind::DomainError);
  try {
    logm(CrossMatrix<double>::diagonal({2, 0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("eigenvalue 0"), std::string::npos) << e.what();
  }
  // Complex input keeps the principal branch across the negative axis.
  const auto l = logm(CrossMatrix<C>::diagonal({C(-1), C(1)}));
  EXPECT_NEAR(l(0, 0).imag(), M_PI, 1e-15);
  // sqrt of a complex zero is allowed.
  EXPECT_EQ(sqrtm(CrossMatrix<C>::zero(3)), CrossMatrix<C>::zero(3));
}

TEST(Domain, UserFunctionUndefined) {
  ScalarFunction<double> inv{[](C z) { return C(1) / z; }, nullptr, "recip"};
  EXPECT_EQ(kind_of<double>([&] { crossmat::apply(CrossMatrix<double>::diagonal({1, 0}), inv); }), ErrorKind::DomainError);
  // Distinct eigenvalues never consult df.
  const auto r = crossmat::apply(CrossMatrix<double>::diagonal({2, 4}), inv);
  EXPECT_EQ(r, CrossMatrix<double>::diagonal({0.5, 0.25}));
}

TEST(Domain, DerivativeRequiredOnlyForDefectiveBlocks) {
  ScalarFunction<double> sq{[](C z) { return z * z; }, nullptr, "square"};
  try {
    crossmat::apply(CrossMatrix<double>(2, {1, 1}, {1, 0}), sq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DerivativeRequired);
  }
  // A scalar block with a repeated eigenvalue needs no derivative.
  EXPECT_EQ(crossmat::apply(CrossMatrix<double>(2, {3, 3}, {0, 0}), sq), CrossMatrix<double>(2, {9, 9}, {0, 0}));
}

TEST(ScalarFunctions, DerivativesMatchFiniteDifferences) {
  const std::vector<std::pair<ScalarFunction<double>, C>> cases = {
      {exp_function<double>(), C(0.3, -0.2)}, {log_function<double>(), C(1.5, 0.4)},
      {sqrt_function<double>(), C(2.0, -0.7)}, {pow_function<double>(1.7), C(0.9, 0.3)},
      {polynomial({C(1), C(-2), C(0.5), C(3)}), C(-0.4, 0.8)},
  };
  for (const auto& [g, z] : cases) {
    const double h = 1e-6;
    const C fd = (g.f(z + h) - g.f(z - h)) / (2 * h);
    EXPECT_LE(std::abs(fd - g.df(z)), 1e-8 * std::max(1.0, std::abs(g.df(z)))) << g.name;
  }
}

template <typename T>
class FuncProperties : public ::testing::Test {};
using ScalarTypes = ::testing::Types<double, std::complex<double>>;
TYPED_TEST_SUITE(FuncProperties, ScalarTypes);

TYPED_TEST(FuncProperties, ExpAgainstOracle) {
  using T = TypeParam;
  std::mt19937_64 rng(44);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_cross<T>(n, rng);
      const auto ref = oracle::dense_expm(to_dense(x));
      const auto e = to_dense(expm(x));
      EXPECT_LE(max_diff(e, ref), 1e-9 * ref.max_abs()) << n;
      EXPECT_TRUE(exactly_cross(e));
    }
  }
}

TYPED_TEST(FuncProperties, PolynomialConsistency) {
  using T = TypeParam;
  std::mt19937_64 rng(45);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t degree = rng() % 5;
      std::vector<C> coeffs(degree + 1);
      for (auto& c : coeffs) c = is_complex_v<T> ? random_scalar<C>(rng) : C(random_scalar<double>(rng));
      const auto x = random_cross<T>(n, rng);
      const auto by_powers = polynomial_by_powers(x, coeffs);
      const auto applied = crossmat::apply(x, polynomial(coeffs));
      EXPECT_LE(max_abs(applied - by_powers), 1e-9 * std::max(1.0, max_abs(by_powers))) << n;
    }
  }
}

TYPED_TEST(FuncProperties, EigenvaluesMapUnderF) {
  using T = TypeParam;
  std::mt19937_64 rng(46);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto x = random_diagonalizable<T>(n, rng);
    auto mapped = eigenvalues_complex(x);
    for (auto& z : mapped) z = std::exp(z);
    EXPECT_LE(oracle::matched_max_deviation(eigenvalues_complex(expm(x)), mapped), 1e-9) << n;
  }
}

TEST(Confluent, ContinuousAcrossSwitch) {
  // Eigenvalue gap swept through the threshold sqrt(eps) |B|_F.
  const double theta = std::sqrt(std::numeric_limits<double>::epsilon());
  for (const auto& g : {exp_function<double>(), sqrt_function<double>(), log_function<double>()}) {
    for (double factor : {0.25, 0.5, 0.9, 1.1, 2.0, 4.0}) {
      const double a = 2.0, b = 0.7;
      // Block [[a, b], [0, a + gap]] has eigenvalues a and a + gap.
      const double frob = std::hypot(std::hypot(a, b), a);
      const double gap = factor * theta * frob;
      const CrossMatrix<double> x(2, {a, a + gap}, {b, 0});
      const auto r = crossmat::apply(x, g);
      // Reference: exact upper-triangular formula with the divided difference.
      const double f1 = g.f(C(a)).real(), f2 = g.f(C(a + gap)).real();
      const double dd = (f2 - f1) / gap;
      EXPECT_NEAR(r(0, 0), f1, 1e-6) << g.name << " " << factor;
      EXPECT_NEAR(r(1, 1), f2, 1e-6) << g.name << " " << factor;
      EXPECT_NEAR(r(0, 1), b * dd, 1e-6) << g.name << " " << factor;
    }
  }
}
