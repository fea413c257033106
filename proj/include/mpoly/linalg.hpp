#pragma once

#include <cstdint>
#include <random>

#include "mpoly/tensor.hpp"

namespace mpoly {

/// Singular values below tol * sigma_max count as zero. Zero matrix -> 0.
std::size_t numerical_rank(const Matrix& m, double tol = kRankTolerance);

/// max |M - M^*|.
double hermitian_deviation(const Matrix& m);

/// 2-norm condition number (infinity for singular input).
double condition_number(const Matrix& m);

/// Hermitian eigendecomposition with eigenvalues sorted nonincreasing;
/// ties keep the solver's original eigenvector order.
struct SortedEigen {
  RealVector values;
  Matrix vectors;
};
SortedEigen sorted_eigen(const Matrix& m);

/// i.i.d. standard complex Gaussian entries (real and imaginary parts each
/// N(0, 1/2)).
Matrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
Vector random_gaussian_vector(std::size_t n, std::mt19937_64& rng);
Tensor random_tensor(const Shape& shape, std::mt19937_64& rng);

/// Haar-ish random unitary via QR of a Gaussian matrix.
Matrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// splitmix64 finalizer, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mpoly
