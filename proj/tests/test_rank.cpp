#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <random>

#include "mpoly/constructions.hpp"
#include "mpoly/error.hpp"
#include "mpoly/linalg.hpp"
#include "mpoly/rank_analysis.hpp"
#include "test_util.hpp"

namespace mpoly {
namespace {

using test::max_abs_diff;

std::size_t lu_rank(const Matrix& m) {
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

// Minimal nonzero rank of sum_{i,j} B_ij X_{(i,j)} over B in {-h..h}^{n x n},
// where X_{(i,j)} has a one at row (j,k), column (k,i) for every k.
std::size_t matmul_grid_oracle(std::size_t n, int h) {
  const std::size_t dim = n * n;
  const int levels = 2 * h + 1;
  long total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= levels;
  std::size_t best = dim;
  for (long code = 1; code < total; ++code) {
    long c = code;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, c /= levels) {
        const double b = static_cast<double>(c % levels - h);
        for (std::size_t k = 0; k < n; ++k) m(j * n + k, k * n + i) += b;
      }
    if (m.cwiseAbs().maxCoeff() == 0.0) continue;
    best = std::min(best, lu_rank(m));
  }
  return best;
}

TEST(SliceCombination, Examples) {
  const Vector beta = (Vector(3) << cplx(1, 2), cplx(-0.5), cplx(0, 3)).finished();
  Matrix skew(3, 3);
  skew << 0, beta[2], -beta[1], -beta[2], 0, beta[0], beta[1], -beta[0], 0;
  EXPECT_LT(max_abs_diff(slice_combination(wedge3(), 0, beta), skew), 1e-15);

  Matrix e11 = Matrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  EXPECT_EQ(slice_combination(unit_tensor(3), 0, Vector::Unit(3, 0)), e11);

  const Matrix s = slice_combination(poly_mult_tensor(3, 4), 0, Vector::Unit(3, 0));
  Matrix expect = Matrix::Zero(4, 6);
  expect.leftCols(4) = Matrix::Identity(4, 4);
  EXPECT_EQ(s, expect);

  EXPECT_THROW(slice_combination(wedge3(), 0, Vector::Zero(3)), InvalidArgument);
  EXPECT_THROW(slice_combination(wedge3(), 0, Vector::Ones(2)), InvalidArgument);
}

TEST(SliceSpan, RankIsFlatteningRank) {
  EXPECT_EQ(slice_span(matmul_tensor(2, 2, 2), 0).rank, 4u);
  EXPECT_EQ(slice_span(poly_mult_tensor(2, 3), 2).rank, 4u);
  EXPECT_EQ(slice_span(poly_mult_tensor(2, 3), 2).slices.size(), 4u);
}

TEST(Minrank, Examples) {
  for (std::size_t r = 1; r <= 4; ++r) EXPECT_EQ(minrank_upper(unit_tensor(r)).minrank_upper, 1u);
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 4}})
    EXPECT_EQ(minrank_upper(poly_mult_tensor(a, b)).minrank_upper, b);
}

TEST(Minrank, MatmulAgainstGridOracle) {
  EXPECT_EQ(matmul_grid_oracle(2, 2), 2u);
  EXPECT_EQ(matmul_grid_oracle(3, 1), 3u);
  for (std::size_t n = 2; n <= 3; ++n) EXPECT_EQ(minrank_upper(matmul_tensor(n, n, n)).minrank_upper, n);
}

TEST(Minrank, WitnessReproducesRank) {
  std::mt19937_64 rng(2);
  for (const Tensor& t : {poly_mult_tensor(3, 4), matmul_tensor(2, 2, 2), random_tensor(Shape{3, 3, 4}, rng)}) {
    const auto p = minrank_upper(t);
    EXPECT_NEAR(p.minrank_witness.norm(), 1.0, 1e-12);
    EXPECT_EQ(numerical_rank(slice_combination(t, 0, p.minrank_witness)), p.minrank_upper);
    EXPECT_LE(p.minrank_upper, p.maxrank_estimate);
    EXPECT_LE(p.maxrank_estimate, std::min(t.dim(1), t.dim(2)));
  }
}

TEST(Minrank, SerialMatchesParallel) {
  std::mt19937_64 rng(8);
  const Tensor t = random_tensor(Shape{5, 4, 6}, rng);
  SamplingConfig cfg;
  cfg.seed = 17;
  const auto a = minrank_upper(t, cfg), b = minrank_upper_serial(t, cfg);
  EXPECT_EQ(a.minrank_upper, b.minrank_upper);
  EXPECT_EQ(a.maxrank_estimate, b.maxrank_estimate);
  EXPECT_EQ(a.minrank_witness, b.minrank_witness);
}

TEST(Minrank, Errors) {
  EXPECT_THROW(minrank_upper(Tensor(Shape{2, 2, 2})), ZeroTensorError);
  EXPECT_THROW(minrank_upper(unit_tensor(2, 4)), InvalidArgument);
}

TEST(PolyMultExact, Certificate) {
  EXPECT_EQ(minrank_poly_mult_exact(2, 3).minrank, 3u);
  for (std::size_t b = 1; b <= 5; ++b) EXPECT_EQ(minrank_poly_mult_exact(1, b).minrank, b);
  const auto c = minrank_poly_mult_exact(3, 4);
  EXPECT_TRUE(c.verified);
  ASSERT_EQ(c.block_start.size(), 3u);
  // First nonzero coordinate 2 (1-based): block at columns 2..5 (1-based).
  EXPECT_EQ(c.block_start[1], 1u);
  EXPECT_THROW(minrank_poly_mult_exact(0, 2), InvalidArgument);
}

TEST(PolyMultExact, AgreesWithSampling) {
  for (std::size_t a = 1; a <= 5; ++a)
    for (std::size_t b = 1; b <= 5; ++b)
      EXPECT_EQ(minrank_poly_mult_exact(a, b).minrank, minrank_upper(poly_mult_tensor(a, b)).minrank_upper);
}

TEST(Maxrank, Examples) {
  EXPECT_EQ(maxrank(wedge3()), 2u);
  for (std::size_t r = 1; r <= 4; ++r) EXPECT_EQ(maxrank(unit_tensor(r)), r);
  EXPECT_EQ(maxrank(matmul_tensor(1, 1, 4)), 4u);
}

TEST(Maxrank, WedgeDeterminantVanishes) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const Vector beta = random_gaussian_vector(3, rng);
    EXPECT_LT(std::abs(slice_combination(wedge3(), 0, beta).determinant()), 1e-12 * std::pow(beta.norm(), 3));
  }
}

TEST(Bounds, Arithmetic) {
  EXPECT_EQ(subspace_low_rank_bound(2, 2), 1u);
  EXPECT_EQ(subspace_low_rank_bound(3, 5), 1u);
  EXPECT_EQ(subspace_low_rank_bound(3, 1), 3u);
  EXPECT_THROW(subspace_low_rank_bound(2, 5), InvalidArgument);
  EXPECT_THROW(subspace_low_rank_bound(2, 0), InvalidArgument);
  EXPECT_EQ(matmul_degeneration_bound(2, 2), 2u);
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(matmul_degeneration_bound(n, n * n), n);
  EXPECT_THROW(matmul_degeneration_bound(0, 1), InvalidArgument);
}

TEST(Bounds, RandomSubspacesContainLowRankMatrices) {
  // For d >= 2 a rank-deficient combination of two basis elements A + tB
  // comes from a generalized eigenvalue of (A, -B).
  std::mt19937_64 rng(20);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 4);
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i < d; ++i) basis.push_back(random_gaussian(3, 3, rng));
    const std::size_t bound = subspace_low_rank_bound(3, d);
    std::size_t found = numerical_rank(basis[0]);
    if (d >= 2) {
      const Matrix m = -basis[1].inverse() * basis[0];
      Eigen::ComplexEigenSolver<Matrix> es(m);
      const cplx t = es.eigenvalues()[0];
      found = std::min(found, numerical_rank(basis[0] + t * basis[1], 1e-8));
    }
    EXPECT_LE(found, bound) << "d = " << d;
  }
}

TEST(Bounds, SampledRestrictionsOfM2) {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const std::size_t b = 3 + trial % 2, c = 3 + (trial / 2) % 2;
    LinearMapTuple maps{{random_gaussian(2, 4, rng), random_gaussian(b, 4, rng), random_gaussian(c, 4, rng)}};
    const Tensor t = restrict(matmul_tensor(2, 2, 2), maps);
    if (!is_concise(t)) continue;
    ++checked;
    EXPECT_LE(minrank_upper(t).minrank_upper, matmul_degeneration_bound(2, 2));
  }
  EXPECT_GT(checked, 0);
}

TEST(Separation, Examples) {
  EXPECT_EQ(separation_check(2, 4).verdict, SeparationVerdict::separated);
  EXPECT_EQ(separation_check(2, 3).verdict, SeparationVerdict::not_separated);
  const auto r = separation_check(3, 8);
  EXPECT_EQ(r.verdict, SeparationVerdict::separated);
  EXPECT_EQ(r.pencil_minrank, 7u);
  EXPECT_EQ(r.matmul_bound, 6u);
  EXPECT_EQ(separation_check(2, 5).verdict, SeparationVerdict::out_of_format);
  EXPECT_THROW(separation_check(2, 1), InvalidArgument);
}

TEST(Separation, Region) {
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t c = 2; c <= n * n + 3; ++c)
      EXPECT_EQ(separation_check(n, c).verdict == SeparationVerdict::separated, n * n - n + 1 < c && c <= n * n);
}

TEST(BorderSubrank, Values) {
  const auto b2 = border_subrank_bound(2), b3 = border_subrank_bound(3), b4 = border_subrank_bound(4);
  EXPECT_EQ(std::tie(b2.bound, b2.a, b2.b), std::make_tuple(3u, 2u, 3u));
  EXPECT_EQ(std::tie(b3.bound, b3.a, b3.b), std::make_tuple(7u, 2u, 7u));
  EXPECT_EQ(std::tie(b4.bound, b4.a, b4.b), std::make_tuple(12u, 5u, 9u));
  for (std::size_t n = 1; n <= 500; ++n) {
    const auto r = border_subrank_bound(n);
    EXPECT_EQ(r.bound, (3 * n * n + 3) / 4);
  }
  EXPECT_THROW(border_subrank_bound(0), InvalidArgument);
}

TEST(Rank1Factor, Examples) {
  EXPECT_FALSE(rank1_factor_check(unit_tensor(2), 0).has_value());
  Tensor e(Shape{2, 2, 2});
  e.at({0, 0, 0}) = 1.0;
  const auto f = rank1_factor_check(e, 2);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->s.shape(), Shape({2, 2}));
  EXPECT_NEAR(std::abs(f->w[0]), 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(insert_leg(f->s, f->w, 2), e), 1e-15);
  EXPECT_THROW(rank1_factor_check(Tensor(Shape{2, 2, 2}), 0), ZeroTensorError);
  EXPECT_THROW(rank1_factor_check(Tensor(Shape{2, 2}), 0), InvalidArgument);
}

TEST(Rank1Factor, ImmPeeling) {
  std::mt19937_64 rng(44);
  const std::size_t n = 2, d = 4;
  for (std::size_t trial = 0; trial < 10; ++trial) {
    LinearMapTuple maps;
    for (int l = 0; l < 3; ++l) maps.maps.push_back(random_gaussian(d, d, rng));
    const Vector w = random_gaussian_vector(d, rng), u = random_gaussian_vector(d, rng);
    maps.maps.push_back(w * u.adjoint());
    const Tensor t = restrict(imm_tensor(n, 4), maps);
    const auto f = rank1_factor_check(t, 3);
    ASSERT_TRUE(f.has_value());
    EXPECT_LE(f->relative_residual, 1e-10);
    const Tensor peeled =
        insert_leg(restrict(imm_tensor(n, 3), {{maps.maps[0], maps.maps[1], maps.maps[2] * imm_peel_map(n, u)}}), w, 3);
    EXPECT_LT(max_abs_diff(peeled, t), 1e-10 * t.norm());
  }
}

TEST(Tightness, Examples) {
  const auto supp = support_triples(wedge3());
  EXPECT_EQ(supp.size(), 6u);
  const std::vector<long> f{1, 1, -2};
  const auto w = tight_certificate_check(supp, {f, f, f});
  EXPECT_TRUE(w.zero_sum);
  EXPECT_FALSE(w.injective);
  EXPECT_FALSE(w.tight());

  const std::vector<long> id{1, 2, 3, 4}, m2{-2, -4, -6, -8};
  const auto u = tight_certificate_check(support_triples(unit_tensor(4)), {id, id, m2});
  EXPECT_TRUE(u.tight());

  const std::vector<long> zero(3, 0);
  const auto z = tight_certificate_check(supp, {zero, zero, zero});
  EXPECT_TRUE(z.zero_sum);
  EXPECT_FALSE(z.injective);

  EXPECT_THROW(tight_certificate_check(supp, {std::vector<long>{0}, zero, zero}), InvalidArgument);
}

TEST(EntropyRate, Examples) {
  const auto supp = support_triples(wedge3());
  EXPECT_NEAR(support_entropy_rate(supp, std::vector<double>(6, 1.0 / 6)), 3.0, 1e-12);
  for (std::size_t r = 1; r <= 5; ++r)
    EXPECT_NEAR(support_entropy_rate(support_triples(unit_tensor(r)), std::vector<double>(r, 1.0 / r)),
                static_cast<double>(r), 1e-12);
  std::vector<double> point(6, 0.0);
  point[2] = 1.0;
  EXPECT_DOUBLE_EQ(support_entropy_rate(supp, point), 1.0);
  EXPECT_THROW(support_entropy_rate(supp, std::vector<double>(6, 0.1)), InvalidArgument);
  EXPECT_THROW(support_entropy_rate(supp, std::vector<double>(5, 0.2)), InvalidArgument);
}

TEST(EntropyRate, GridSearch) {
  const auto g = support_entropy_rate_grid(support_triples(wedge3()), 6);
  EXPECT_NEAR(g.rate, 3.0, 1e-12);
  double sum = 0.0;
  for (double x : g.p) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Semicontinuity, PerturbedSequences) {
  std::mt19937_64 rng(51);
  for (const Tensor& t : {poly_mult_tensor(2, 3), poly_mult_tensor(3, 4), matmul_tensor(2, 2, 2)}) {
    const Tensor noise = random_tensor(t.shape(), rng);
    const std::size_t limit = minrank_upper(t).minrank_upper;
    for (double i : {10.0, 100.0, 1000.0}) {
      Tensor ti = t;
      for (std::size_t e = 0; e < ti.size(); ++e) ti.data()[e] += noise.data()[e] / i;
      EXPECT_LE(limit, minrank_upper(ti).minrank_upper);
    }
  }
}

}  // namespace
}  // namespace mpoly
