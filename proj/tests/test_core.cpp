#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace crossmat;
using namespace crossmat::testing;

namespace {

CrossMatrix<double> x3() { return CrossMatrix<double>(3, {1, 2, 3}, {4, 2, 5}); }

template <typename Fn>
ErrorKind kind_of(Fn&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ConvergenceFailure;
}

}  // namespace

TEST(Construction, OneByOne) {
  const CrossMatrix<double> x(1, {7}, {7});
  EXPECT_EQ(to_dense(x), (DenseMatrix<double>{{7}}));
  EXPECT_TRUE(x.has_center());
  EXPECT_EQ(x.pairs(), 0u);
}

TEST(Construction, TwoByTwoIsFull) {
  const CrossMatrix<double> x(2, {1, 4}, {2, 3});
  EXPECT_EQ(to_dense(x), (DenseMatrix<double>{{1, 2}, {3, 4}}));
}

TEST(Construction, CenterConflict) {
  EXPECT_EQ(kind_of([] { CrossMatrix<double>(3, {1, 2, 3}, {4, 9, 5}); }), ErrorKind::CenterConflict);
}

TEST(Construction, LengthMismatch) {
  EXPECT_EQ(kind_of([] { CrossMatrix<double>(3, {1, 2}, {4, 2, 5}); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { CrossMatrix<double>(2, {1, 2}, {4, 2, 5}); }), ErrorKind::DimensionMismatch);
}

TEST(Construction, ZeroOrderRejected) {
  EXPECT_EQ(kind_of([] { CrossMatrix<double>(0, {}, {}); }), ErrorKind::DimensionMismatch);
}

TEST(Construction, NanCenterNeverMatches) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { CrossMatrix<double>(1, {nan}, {nan}); }), ErrorKind::CenterConflict);
}

TEST(Construction, Factories) {
  EXPECT_EQ(to_dense(CrossMatrix<double>::identity(3)), DenseMatrix<double>::identity(3));
  EXPECT_EQ(to_dense(CrossMatrix<double>::exchange(3)),
            (DenseMatrix<double>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(to_dense(CrossMatrix<double>::zero(2)), DenseMatrix<double>(2, 2));
  EXPECT_EQ(to_dense(CrossMatrix<double>::diagonal({1, 2, 3})),
            (DenseMatrix<double>{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
}

TEST(FromDense, Identity) {
  EXPECT_EQ(from_dense(DenseMatrix<double>{{1, 0}, {0, 1}}, 0.0), CrossMatrix<double>::identity(2));
}

TEST(FromDense, ExactCrossPattern) {
  const auto x = from_dense(DenseMatrix<double>{{1, 0, 4}, {0, 2, 0}, {5, 0, 3}}, 0.0);
  EXPECT_EQ(to_vec(x.diag()), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(to_vec(x.anti()), (std::vector<double>{4, 2, 5}));
}

TEST(FromDense, OffCrossAboveTolerance) {
  DenseMatrix<double> a = DenseMatrix<double>::identity(3);
  a(0, 1) = 1e-3;
  try {
    from_dense(a, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCross);
    EXPECT_NE(std::string(e.what()).find("(1, 2)"), std::string::npos) << e.what();
  }
}

TEST(FromDense, ReportsWorstOffender) {
  DenseMatrix<double> a = DenseMatrix<double>::identity(4);
  a(0, 1) = 1e-3;
  a(2, 0) = -5e-2;
  try {
    from_dense(a, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(3, 1)"), std::string::npos) << e.what();
  }
}

TEST(FromDense, SubToleranceEntriesAreDiscarded) {
  DenseMatrix<double> a = DenseMatrix<double>::identity(3);
  a(0, 1) = 1e-9;
  const auto x = from_dense(a, 1e-6);
  EXPECT_EQ(x, CrossMatrix<double>::identity(3));
  EXPECT_EQ(from_dense(to_dense(x), 0.0), x);
}

TEST(FromDense, NotSquare) {
  EXPECT_EQ(kind_of([] { from_dense(DenseMatrix<double>(2, 3), 0.0); }), ErrorKind::NotSquare);
}

TEST(FromDense, NanOffCrossIsRejected) {
  DenseMatrix<double> a = DenseMatrix<double>::identity(3);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { from_dense(a, 1.0); }), ErrorKind::NotCross);
}

TEST(ToDense, Examples) {
  EXPECT_EQ(to_dense(x3()), (DenseMatrix<double>{{1, 0, 4}, {0, 2, 0}, {5, 0, 3}}));
  EXPECT_EQ(to_dense(CrossMatrix<double>(2, {1, 4}, {2, 3})), (DenseMatrix<double>{{1, 2}, {3, 4}}));
}

TEST(Add, Examples) {
  const auto x = x3();
  EXPECT_EQ(x + CrossMatrix<double>::zero(3), x);
  const auto s = x + CrossMatrix<double>(3, {1, 0, 1}, {0, 0, 0});
  EXPECT_EQ(to_vec(s.diag()), (std::vector<double>{2, 2, 4}));
  EXPECT_EQ(to_vec(s.anti()), (std::vector<double>{4, 2, 5}));
  EXPECT_EQ(x + (-1.0) * x, CrossMatrix<double>::zero(3));
  EXPECT_EQ(kind_of([&] { add(x, CrossMatrix<double>::zero(2)); }), ErrorKind::DimensionMismatch);
}

TEST(Mul, Examples) {
  const auto x = x3();
  EXPECT_EQ(x * CrossMatrix<double>::identity(3), x);
  const CrossMatrix<double> a(2, {1, 4}, {2, 3}), b(2, {5, 8}, {6, 7});
  const auto expected = oracle::dense_mul(to_dense(a), to_dense(b));
  EXPECT_EQ(expected, (DenseMatrix<double>{{19, 22}, {43, 50}}));
  EXPECT_EQ(to_dense(a * b), expected);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto j = CrossMatrix<double>::exchange(n);
    EXPECT_EQ(j * j, CrossMatrix<double>::identity(n)) << n;
  }
  EXPECT_EQ(kind_of([&] { mul(x, CrossMatrix<double>::zero(2)); }), ErrorKind::DimensionMismatch);
}

TEST(Transpose, Examples) {
  const auto t = transpose(x3());
  EXPECT_EQ(to_vec(t.diag()), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(to_vec(t.anti()), (std::vector<double>{5, 2, 4}));
  EXPECT_EQ(conj_transpose(x3()), transpose(x3()));
  EXPECT_EQ(to_dense(2.0 * CrossMatrix<double>(2, {1, 4}, {2, 3})), (DenseMatrix<double>{{2, 4}, {6, 8}}));
}

TEST(Transpose, ComplexConjugates) {
  const CrossMatrix<C> z(2, {C(1, 1), C(2, -1)}, {C(0, 3), C(4, 0)});
  const auto h = to_dense(conj_transpose(z));
  const auto d = to_dense(z);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(h(r, c), std::conj(d(c, r)));
}

TEST(PairBlock, Examples) {
  const auto x = from_dense(DenseMatrix<double>{{1, 0, 4}, {0, 2, 0}, {5, 0, 3}}, 0.0);
  EXPECT_EQ(x.pair_block(0), (Block2<double>{1, 4, 5, 3}));
  for (std::size_t p = 0; p < 3; ++p)
    EXPECT_EQ(CrossMatrix<double>::identity(7).pair_block(p), Block2<double>::identity());
  const CrossMatrix<double> y(4, {1, 2, 3, 4}, {5, 6, 7, 8});
  EXPECT_EQ(y.pair_block(1), (Block2<double>{2, 6, 7, 3}));
}

TEST(PairBlock, OutOfRange) {
  EXPECT_EQ(kind_of([] { x3().pair_block(1); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([] { CrossMatrix<double>(1, {7}, {7}).pair_block(0); }), ErrorKind::IndexOutOfRange);
}

TEST(Norms, FrobeniusCountsCenterOnce) {
  EXPECT_DOUBLE_EQ(frobenius(x3()), std::sqrt(1.0 + 4 + 9 + 16 + 25));
  EXPECT_DOUBLE_EQ(frobenius(x3()), to_dense(x3()).frobenius());
}

template <typename T>
class RingProperties : public ::testing::Test {};
using ScalarTypes = ::testing::Types<double, std::complex<double>>;
TYPED_TEST_SUITE(RingProperties, ScalarTypes);

TYPED_TEST(RingProperties, ProductMatchesDenseOracle) {
  using T = TypeParam;
  std::mt19937_64 rng(1);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_cross<T>(n, rng), y = random_cross<T>(n, rng);
      const auto p = to_dense(x * y);
      const auto d = oracle::dense_mul(to_dense(x), to_dense(y));
      EXPECT_LE(max_diff(p, d), 4.0 * n * eps * frobenius(x) * frobenius(y));
      EXPECT_TRUE(exactly_cross(p));
    }
  }
}

TYPED_TEST(RingProperties, AssociativeAndDistributive) {
  using T = TypeParam;
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_cross<T>(n, rng), y = random_cross<T>(n, rng), z = random_cross<T>(n, rng);
      EXPECT_LE(max_diff((x * y) * z, x * (y * z)), 1e-14);
      EXPECT_LE(max_diff(x * (y + z), x * y + x * z), 1e-14);
      EXPECT_LE(max_diff((x + y) * z, x * z + y * z), 1e-14);
      EXPECT_LE(max_diff((x + y) + z, x + (y + z)), 1e-15);
    }
  }
}

TYPED_TEST(RingProperties, DenseRoundTripIsBitExact) {
  using T = TypeParam;
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 13; ++n) {
    const auto x = random_cross<T>(n, rng);
    EXPECT_EQ(from_dense(to_dense(x), 0.0), x);
    EXPECT_EQ(transpose(transpose(x)), x);
    EXPECT_EQ(conj_transpose(conj_transpose(x)), x);
    EXPECT_EQ(to_dense(conj_transpose(x)), oracle::adjoint(to_dense(x)));
    const auto t = to_dense(transpose(x));
    const auto d = to_dense(x);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) EXPECT_EQ(t(r, c), d(c, r));
  }
}
