#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mpoly/tensor.hpp"

namespace mpoly::test {

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.shape().dims() != b.shape().dims()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix scaled_identity(std::size_t d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) / static_cast<double>(d);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// Gram matrix on leg `leg` of an order-3 tensor, summed entry by entry.
inline Matrix naive_gram3(const Tensor& t, std::size_t leg) {
  const std::size_t d[3] = {t.dim(0), t.dim(1), t.dim(2)};
  Matrix g = Matrix::Zero(d[leg], d[leg]);
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        const std::size_t idx[3] = {i, j, k};
        for (std::size_t x = 0; x < d[leg]; ++x) {
          std::size_t other[3] = {i, j, k};
          other[leg] = x;
          g(idx[leg], x) += t.at({i, j, k}) * std::conj(t.at({other[0], other[1], other[2]}));
        }
      }
  return g;
}

inline std::vector<double> padded(std::vector<double> v, std::size_t n) {
  v.resize(n, 0.0);
  return v;
}

}  // namespace mpoly::test
