#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mpoly/error.hpp"

namespace mpoly {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Format (n_1, ..., n_k) of an order-k tensor, k >= 2, every n_i >= 1.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::size_t> dims);
  explicit Shape(std::vector<std::size_t> dims);

  std::size_t order() const { return dims_.size(); }
  std::size_t operator[](std::size_t leg) const { return dims_[leg]; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::size_t volume() const;
  // Product of all dims except `leg`.
  std::size_t complement(std::size_t leg) const;

  bool operator==(const Shape&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Dense order-k complex tensor; entries stored row-major (last index fastest).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<cplx> entries);

  const Shape& shape() const { return shape_; }
  std::size_t order() const { return shape_.order(); }
  std::size_t dim(std::size_t leg) const { return shape_[leg]; }
  std::size_t size() const { return data_.size(); }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  cplx& operator()(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  const cplx& operator()(std::span<const std::size_t> idx) const {
    return data_[offset(idx)];
  }
  cplx& at(std::initializer_list<std::size_t> idx);
  const cplx& at(std::initializer_list<std::size_t> idx) const;

  std::size_t offset(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unravel(std::size_t offset) const;

  double norm2() const;
  double norm() const;
  bool is_zero() const;

  Tensor& operator*=(cplx s);
  friend Tensor operator*(cplx s, Tensor t) { return t *= s; }

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_;
  std::vector<cplx> data_;
};

/// Hermitian marginals mu_1(T), ..., mu_k(T), each trace one.
struct MarginalTriple {
  std::vector<Matrix> matrices;
};

/// Nonincreasing spectra, one block per leg.
struct SpectrumPoint {
  std::vector<std::vector<double>> blocks;

  std::size_t order() const { return blocks.size(); }
  // Checks nonincreasing, entries >= -1e-12, sums 1 within 1e-10.
  void validate() const;
};

/// One linear map per leg; map i has dims_i columns.
struct LinearMapTuple {
  std::vector<Matrix> maps;
};

/// Leg-vs-rest matrix: rows indexed by leg `leg`, columns by the remaining
/// legs in increasing order, lexicographically.
Matrix flatten(const Tensor& t, std::size_t leg);

/// (F F^*) / ||T||^2 with F = flatten(t, leg).
Matrix marginal(const Tensor& t, std::size_t leg);

MarginalTriple moment_map(const Tensor& t);

/// Eigenvalues of a Hermitian matrix, nonincreasing, with values in
/// [-1e-10, 0) clamped to zero.
std::vector<double> spectrum(const Matrix& m);

SpectrumPoint spec_point(const Tensor& t);

/// Applies `map` to leg `leg`: T'[..,a',..] = sum_a map(a', a) T[..,a,..].
Tensor apply_leg(const Tensor& t, std::size_t leg, const Matrix& map);

/// (A_1 (x) ... (x) A_k) T.
Tensor restrict(const Tensor& t, const LinearMapTuple& maps);

/// Block-diagonal sum; T1 occupies the leading coordinates.
Tensor direct_sum(const Tensor& t1, const Tensor& t2);

/// Legwise Kronecker product; leg index (i1, i2) -> i1 * dim2 + i2.
Tensor kron_product(const Tensor& t1, const Tensor& t2);

/// Embeds t into the leading coordinates of `shape`.
Tensor pad(const Tensor& t, const Shape& shape);

/// Numerical rank of every flattening (threshold 1e-10 * sigma_max).
std::vector<std::size_t> conciseness_profile(const Tensor& t);
bool is_concise(const Tensor& t);

/// Multi-indices of entries with |T[idx]| > tol.
std::vector<std::vector<std::size_t>> support(const Tensor& t, double tol = 0.0);

/// T (x) w with w inserted as leg `leg` of the result.
Tensor insert_leg(const Tensor& s, const Vector& w, std::size_t leg);

/// Permutes the legs: result leg i is source leg perm[i].
Tensor permute_legs(const Tensor& t, std::span<const std::size_t> perm);

inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kClampTolerance = 1e-10;

}  // namespace mpoly
