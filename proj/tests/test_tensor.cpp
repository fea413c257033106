#include <gtest/gtest.h>

#include <random>

#include "mpoly/constructions.hpp"
#include "mpoly/error.hpp"
#include "mpoly/linalg.hpp"
#include "test_util.hpp"

namespace mpoly {
namespace {

using test::max_abs_diff;

// M_2 built directly from its index description, independent of the library.
Tensor m2_by_hand() {
  Tensor t(Shape{4, 4, 4});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) t.at({i * 2 + j, j * 2 + k, k * 2 + i}) = 1.0;
  return t;
}

TEST(Shape, RejectsBadDims) {
  EXPECT_THROW(Shape({3}), InvalidArgument);
  EXPECT_THROW(Shape({2, 0, 2}), InvalidArgument);
  EXPECT_EQ(Shape({2, 3, 4}).volume(), 24u);
  EXPECT_EQ(Shape({2, 3, 4}).complement(1), 8u);
}

TEST(Flatten, BasisTensor) {
  Tensor t(Shape{2, 2, 2});
  t.at({0, 1, 0}) = 1.0;
  const Matrix f = flatten(t, 0);
  ASSERT_EQ(f.rows(), 2);
  ASSERT_EQ(f.cols(), 4);
  EXPECT_EQ(f(0, 2), cplx(1.0));
  EXPECT_DOUBLE_EQ(f.cwiseAbs().sum(), 1.0);
  EXPECT_THROW(flatten(t, 3), InvalidArgument);
}

TEST(Flatten, UnitTensorSlices) {
  Matrix expect = Matrix::Zero(2, 4);
  expect(0, 0) = expect(1, 3) = 1.0;
  EXPECT_EQ(flatten(unit_tensor(2), 1), expect);
}

TEST(Flatten, MatmulRowsOrthogonal) {
  const Tensor m = m2_by_hand();
  EXPECT_EQ(m, matmul_tensor(2, 2, 2));
  const Matrix f = flatten(m, 0);
  const Matrix g = f * f.adjoint();
  EXPECT_LT(max_abs_diff(g, 2.0 * Matrix::Identity(4, 4)), 1e-15);
}

TEST(Marginal, UnitTensorIsUniform) {
  for (std::size_t r = 1; r <= 5; ++r)
    for (std::size_t leg = 0; leg < 3; ++leg)
      EXPECT_LT(max_abs_diff(marginal(unit_tensor(r), leg), test::scaled_identity(r)), 1e-15);
}

TEST(Marginal, MatchesEntrywiseGram) {
  std::mt19937_64 rng(11);
  const Tensor t = random_tensor(Shape{2, 3, 4}, rng);
  for (std::size_t leg = 0; leg < 3; ++leg)
    EXPECT_LT(max_abs_diff(marginal(t, leg), test::naive_gram3(t, leg) / t.norm2()), 1e-14);
}

TEST(Marginal, ZeroTensorRejected) {
  EXPECT_THROW(marginal(Tensor(Shape{2, 2, 2}), 0), ZeroTensorError);
  EXPECT_THROW(spec_point(Tensor(Shape{2, 2, 2})), ZeroTensorError);
  EXPECT_THROW(moment_map(Tensor(Shape{2, 2, 2})), ZeroTensorError);
}

TEST(MomentMap, Examples) {
  for (const auto& m : moment_map(m2_by_hand()).matrices) EXPECT_LT(max_abs_diff(m, test::scaled_identity(4)), 1e-15);
  for (const auto& m : moment_map(unit_tensor(3)).matrices) EXPECT_LT(max_abs_diff(m, test::scaled_identity(3)), 1e-15);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  Tensor t(Shape{2, 2, 2});
  t.at({0, 0, 0}) = 1.0;
  for (const auto& m : moment_map(t).matrices) EXPECT_EQ(m, e11);
}

TEST(Spectrum, SortedAndClamped) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  const auto s = spectrum(d);
  EXPECT_NEAR(s[0], 0.75, 1e-15);
  EXPECT_NEAR(s[1], 0.25, 1e-15);
  d(1, 1) = -1e-12;
  EXPECT_EQ(spectrum(d)[1], 0.0);
  d(1, 1) = -1e-6;
  EXPECT_THROW(spectrum(d), NumericalError);
  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_THROW(spectrum(nh), NumericalError);
}

TEST(SpecPoint, PaddedRankOne) {
  Tensor t(Shape{2, 2, 2});
  t.at({0, 0, 0}) = 1.0;
  const auto p = spec_point(t);
  for (const auto& b : p.blocks) EXPECT_EQ(b, (std::vector<double>{1.0, 0.0}));
}

TEST(SpecPoint, UnitaryInvariance) {
  std::mt19937_64 rng(5);
  for (std::size_t trial = 0; trial < 5; ++trial) {
    const Tensor t = random_tensor(Shape{3, 2, 4}, rng);
    LinearMapTuple u{{random_unitary(3, rng), random_unitary(2, rng), random_unitary(4, rng)}};
    const auto a = spec_point(t), b = spec_point(restrict(t, u));
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t i = 0; i < a.blocks[l].size(); ++i) EXPECT_NEAR(a.blocks[l][i], b.blocks[l][i], 1e-10);
  }
}

TEST(SpecPoint, PaddingIsExact) {
  std::mt19937_64 rng(9);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const Tensor t = random_tensor(Shape{2 + trial % 2, 3, 1 + trial % 3}, rng);
    const Tensor z(Shape{1 + trial % 3, 2, 1});
    const auto a = spec_point(t), b = spec_point(direct_sum(t, z));
    for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(test::padded(a.blocks[l], b.blocks[l].size()), b.blocks[l]);
    const auto c = spec_point(pad(t, Shape{5, 5, 5}));
    for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(test::padded(a.blocks[l], 5), c.blocks[l]);
  }
}

TEST(Restrict, ProjectsUnitTensor) {
  Matrix row = Matrix::Zero(1, 2);
  row(0, 0) = 1.0;
  const Tensor r = restrict(unit_tensor(2), {{row, row, row}});
  EXPECT_EQ(r, unit_tensor(1));
  EXPECT_THROW(restrict(unit_tensor(2), {{row, row}}), InvalidArgument);
  EXPECT_THROW(restrict(unit_tensor(2), {{row, row, Matrix::Zero(1, 3)}}), InvalidArgument);
}

TEST(Restrict, FlatteningConsistency) {
  std::mt19937_64 rng(21);
  const Tensor t = random_tensor(Shape{2, 3, 2}, rng);
  const Matrix a = random_gaussian(3, 2, rng), b = random_gaussian(2, 3, rng), c = random_gaussian(4, 2, rng);
  const Tensor r = restrict(t, {{a, b, c}});
  EXPECT_LT(max_abs_diff(flatten(r, 0), a * flatten(t, 0) * test::kron(b, c).transpose()), 1e-12);
  EXPECT_LT(max_abs_diff(flatten(r, 2), c * flatten(t, 2) * test::kron(a, b).transpose()), 1e-12);
}

TEST(Restrict, MarginalTransformsByCongruence) {
  std::mt19937_64 rng(4);
  const Tensor t = random_tensor(Shape{3, 3, 2}, rng);
  const Matrix g0 = random_gaussian(3, 3, rng), g1 = random_gaussian(3, 3, rng), g2 = random_gaussian(2, 2, rng);
  const Tensor r = restrict(t, {{g0, g1, g2}});
  // The leg-0 Gram of r is g0 G g0^* with G the leg-0 Gram of (I x g1 x g2) t.
  const Tensor partial = restrict(t, {{Matrix::Identity(3, 3), g1, g2}});
  const Matrix gram = test::naive_gram3(partial, 0);
  EXPECT_LT(max_abs_diff(marginal(r, 0), g0 * gram * g0.adjoint() / r.norm2()), 1e-12);
}

TEST(DirectSum, NormsAndUnit) {
  Tensor e(Shape{1, 1, 1});
  e.at({0, 0, 0}) = 1.0;
  EXPECT_EQ(direct_sum(e, e), unit_tensor(2));
  std::mt19937_64 rng(2);
  const Tensor a = random_tensor(Shape{2, 2, 3}, rng), b = random_tensor(Shape{3, 1, 2}, rng);
  EXPECT_NEAR(direct_sum(a, b).norm2(), a.norm2() + b.norm2(), 1e-12);
  EXPECT_THROW(direct_sum(a, Tensor(Shape{2, 2})), InvalidArgument);
}

TEST(KronProduct, UnitsAndNorms) {
  EXPECT_EQ(kron_product(unit_tensor(2), unit_tensor(2)), unit_tensor(4));
  Tensor one(Shape{1, 1, 1});
  one.at({0, 0, 0}) = 1.0;
  EXPECT_EQ(kron_product(matmul_tensor(2, 2, 2), one), matmul_tensor(2, 2, 2));
  std::mt19937_64 rng(8);
  const Tensor a = random_tensor(Shape{2, 3, 2}, rng), b = random_tensor(Shape{2, 2, 3}, rng);
  EXPECT_NEAR(kron_product(a, b).norm(), a.norm() * b.norm(), 1e-12);
}

TEST(KronProduct, SpectraMultiply) {
  std::mt19937_64 rng(13);
  for (std::size_t trial = 0; trial < 5; ++trial) {
    const Tensor a = random_tensor(Shape{2, 3, 2}, rng), b = random_tensor(Shape{3, 2, 2}, rng);
    const auto pa = spec_point(a), pb = spec_point(b), pk = spec_point(kron_product(a, b));
    for (std::size_t l = 0; l < 3; ++l) {
      std::vector<double> prod;
      for (double x : pa.blocks[l])
        for (double y : pb.blocks[l]) prod.push_back(x * y);
      std::sort(prod.begin(), prod.end(), std::greater<>());
      for (std::size_t i = 0; i < prod.size(); ++i) EXPECT_NEAR(pk.blocks[l][i], prod[i], 1e-12);
    }
  }
}

TEST(Pad, EmbedsLeadingCoordinates) {
  const Tensor p = pad(unit_tensor(2), Shape{3, 3, 3});
  EXPECT_EQ(p.size(), 27u);
  std::size_t zeros = 0;
  for (auto x : p.data()) zeros += (x == cplx{}) ? 1 : 0;
  EXPECT_EQ(zeros, 27u - 2u);
  EXPECT_EQ(pad(unit_tensor(2), Shape{2, 2, 2}), unit_tensor(2));
  EXPECT_THROW(pad(unit_tensor(3), Shape{2, 3, 3}), InvalidArgument);
}

TEST(Conciseness, Profiles) {
  EXPECT_EQ(conciseness_profile(matmul_tensor(2, 2, 2)), (std::vector<std::size_t>{4, 4, 4}));
  Tensor e(Shape{2, 2, 2});
  e.at({0, 0, 0}) = 1.0;
  EXPECT_EQ(conciseness_profile(e), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_FALSE(is_concise(e));
  EXPECT_EQ(conciseness_profile(poly_mult_tensor(2, 3)), (std::vector<std::size_t>{2, 3, 4}));
}

TEST(Properties, TraceEqualityAcrossLegs) {
  std::mt19937_64 rng(17);
  for (std::size_t trial = 0; trial < 10; ++trial) {
    const Tensor t = random_tensor(Shape{2 + trial % 3, 3, 4}, rng);
    for (std::size_t l = 0; l < 3; ++l) {
      const Matrix f = flatten(t, l);
      EXPECT_NEAR((f * f.adjoint()).trace().real() / t.norm2(), 1.0, 1e-12);
    }
  }
}

TEST(InsertLeg, MatchesOuterProduct) {
  std::mt19937_64 rng(1);
  const Tensor s = random_tensor(Shape{2, 3}, rng);
  const Vector w = random_gaussian_vector(2, rng);
  const Tensor t = insert_leg(s, w, 1);
  ASSERT_EQ(t.shape(), Shape({2, 2, 3}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t.at({i, a, j}), s.at({i, j}) * w[static_cast<Eigen::Index>(a)]);
}

TEST(PermuteLegs, CyclesMatmul) {
  const std::size_t perm[3] = {1, 2, 0};
  const Tensor p = permute_legs(matmul_tensor(2, 3, 4), perm);
  EXPECT_EQ(p, matmul_tensor(3, 4, 2));
}

}  // namespace
}  // namespace mpoly
