#include <gtest/gtest.h>

#include <random>

#include "mpoly/kernels.hpp"
#include "mpoly/linalg.hpp"
#include "test_util.hpp"

namespace mpoly {
namespace {

class KernelShapes : public ::testing::TestWithParam<std::vector<std::size_t>> {};

TEST_P(KernelShapes, SerialAndOpenMPAgreeBitwise) {
  std::mt19937_64 rng(3);
  const Tensor t = random_tensor(Shape(GetParam()), rng);
  for (std::size_t leg = 0; leg < t.order(); ++leg) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t l = 0; l < leg; ++l) outer *= t.dim(l);
    for (std::size_t l = leg + 1; l < t.order(); ++l) inner *= t.dim(l);
    const kernels::LegView v{outer, t.dim(leg), inner};

    std::vector<cplx> gs(v.dim * v.dim), go(v.dim * v.dim);
    kernels::serial::leg_gram(t.data(), v, gs);
    kernels::omp::leg_gram(t.data(), v, go);
    EXPECT_EQ(gs, go);

    const std::size_t rows = v.dim + 1;
    const Matrix m = random_gaussian(rows, v.dim, rng);
    std::vector<cplx> map(rows * v.dim);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t a = 0; a < v.dim; ++a)
        map[r * v.dim + a] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a));
    std::vector<cplx> ys(outer * rows * inner), yo(outer * rows * inner);
    kernels::serial::leg_apply(t.data(), v, map, rows, ys);
    kernels::omp::leg_apply(t.data(), v, map, rows, yo);
    EXPECT_EQ(ys, yo);
  }
}

TEST_P(KernelShapes, GramMatchesFlattening) {
  std::mt19937_64 rng(4);
  const Tensor t = random_tensor(Shape(GetParam()), rng);
  for (std::size_t leg = 0; leg < t.order(); ++leg) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t l = 0; l < leg; ++l) outer *= t.dim(l);
    for (std::size_t l = leg + 1; l < t.order(); ++l) inner *= t.dim(l);
    const std::size_t d = t.dim(leg);
    std::vector<cplx> g(d * d);
    kernels::serial::leg_gram(t.data(), {outer, d, inner}, g);
    const Matrix f = flatten(t, leg);
    const Matrix expect = f * f.adjoint();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        EXPECT_NEAR(std::abs(g[a * d + b] - expect(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))), 0.0,
                    1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelShapes,
                         ::testing::Values(std::vector<std::size_t>{2, 3, 4}, std::vector<std::size_t>{5, 1, 7},
                                           std::vector<std::size_t>{3, 2, 2, 3},
                                           std::vector<std::size_t>{40, 40, 40},
                                           std::vector<std::size_t>{64, 16, 32}));

}  // namespace
}  // namespace mpoly
