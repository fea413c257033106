#include "mpoly/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "mpoly/kernels.hpp"
#include "mpoly/linalg.hpp"

namespace mpoly {

namespace {

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw InvalidArgument("tensor order must be at least 2");
  for (auto d : dims)
    if (d == 0) throw InvalidArgument("tensor dimensions must be positive");
}

void check_leg(const Tensor& t, std::size_t leg) {
  if (leg >= t.order())
    throw InvalidArgument("leg " + std::to_string(leg) + " out of range for order " +
                          std::to_string(t.order()));
}

kernels::LegView leg_view(const Shape& s, std::size_t leg) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < leg; ++i) outer *= s[i];
  for (std::size_t i = leg + 1; i < s.order(); ++i) inner *= s[i];
  return {outer, s[leg], inner};
}

void check_same_order(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order()) throw InvalidArgument("tensor orders differ");
}

Matrix leg_gram(const Tensor& t, std::size_t leg) {
  const auto v = leg_view(t.shape(), leg);
  Matrix g(v.dim, v.dim);
  std::vector<cplx> buf(v.dim * v.dim);
  kernels::omp::leg_gram(t.data(), v, buf);
  for (std::size_t a = 0; a < v.dim; ++a)
    for (std::size_t b = 0; b < v.dim; ++b) g(a, b) = buf[a * v.dim + b];
  return g;
}

}  // namespace

Shape::Shape(std::initializer_list<std::size_t> dims) : dims_(dims) { check_dims(dims_); }

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) { check_dims(dims_); }

std::size_t Shape::volume() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t Shape::complement(std::size_t leg) const { return volume() / dims_.at(leg); }

Tensor::Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_.volume()) {}

Tensor::Tensor(Shape shape, std::vector<cplx> entries)
    : shape_(std::move(shape)), data_(std::move(entries)) {
  if (data_.size() != shape_.volume())
    throw InvalidArgument("entry count does not match shape volume");
}

std::size_t Tensor::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != order()) throw InvalidArgument("index arity does not match order");
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= shape_[i]) throw InvalidArgument("index out of range");
    off = off * shape_[i] + idx[i];
  }
  return off;
}

std::vector<std::size_t> Tensor::unravel(std::size_t off) const {
  std::vector<std::size_t> idx(order());
  for (std::size_t i = order(); i-- > 0;) {
    idx[i] = off % shape_[i];
    off /= shape_[i];
  }
  return idx;
}

cplx& Tensor::at(std::initializer_list<std::size_t> idx) {
  return data_[offset(std::span(idx.begin(), idx.size()))];
}

const cplx& Tensor::at(std::initializer_list<std::size_t> idx) const {
  return data_[offset(std::span(idx.begin(), idx.size()))];
}

double Tensor::norm2() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return s;
}

double Tensor::norm() const { return std::sqrt(norm2()); }

bool Tensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](cplx x) { return x == cplx{}; });
}

Tensor& Tensor::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

void SpectrumPoint::validate() const {
  if (blocks.empty()) throw InvalidArgument("spectrum point has no blocks");
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("spectrum point block is empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!std::isfinite(b[i]) || b[i] < -1e-12)
        throw InvalidArgument("spectrum point entry negative or not finite");
      if (i > 0 && b[i] > b[i - 1] + 1e-12)
        throw InvalidArgument("spectrum point block is not nonincreasing");
      sum += b[i];
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw InvalidArgument("spectrum point block does not sum to one");
  }
}

Matrix flatten(const Tensor& t, std::size_t leg) {
  check_leg(t, leg);
  const auto v = leg_view(t.shape(), leg);
  Matrix f(v.dim, v.outer * v.inner);
  const auto x = t.data();
  for (std::size_t p = 0; p < v.outer; ++p)
    for (std::size_t a = 0; a < v.dim; ++a)
      for (std::size_t q = 0; q < v.inner; ++q)
        f(a, p * v.inner + q) = x[(p * v.dim + a) * v.inner + q];
  return f;
}

Matrix marginal(const Tensor& t, std::size_t leg) {
  check_leg(t, leg);
  const double n2 = t.norm2();
  if (n2 == 0.0) throw ZeroTensorError("marginal of the zero tensor");
  return leg_gram(t, leg) / n2;
}

MarginalTriple moment_map(const Tensor& t) {
  if (t.is_zero()) throw ZeroTensorError("moment map of the zero tensor");
  MarginalTriple m;
  for (std::size_t leg = 0; leg < t.order(); ++leg) m.matrices.push_back(marginal(t, leg));
  return m;
}

std::vector<double> spectrum(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("spectrum of a non-square matrix");
  if (hermitian_deviation(m) > 1e-10) throw NumericalError("spectrum of a non-Hermitian matrix");
  // Rows and columns that are exactly zero contribute exact zero eigenvalues;
  // dropping them keeps the spectrum of a padded tensor bit-identical.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (m.row(i).cwiseAbs().maxCoeff() != 0.0 || m.col(i).cwiseAbs().maxCoeff() != 0.0) keep.push_back(i);
  std::vector<double> out(static_cast<std::size_t>(m.rows()), 0.0);
  if (keep.empty()) return out;
  const Matrix sub = m(keep, keep);
  const auto eig = sorted_eigen(sub);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double v = eig.values[i];
    if (v < 0.0) {
      if (v < -kClampTolerance)
        throw NumericalError("matrix has eigenvalue " + std::to_string(v) + " below -1e-10");
      v = 0.0;
    }
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

SpectrumPoint spec_point(const Tensor& t) {
  if (t.is_zero()) throw ZeroTensorError("spectrum point of the zero tensor");
  SpectrumPoint p;
  for (std::size_t leg = 0; leg < t.order(); ++leg) p.blocks.push_back(spectrum(marginal(t, leg)));
  return p;
}

Tensor apply_leg(const Tensor& t, std::size_t leg, const Matrix& map) {
  check_leg(t, leg);
  if (static_cast<std::size_t>(map.cols()) != t.dim(leg))
    throw InvalidArgument("map has " + std::to_string(map.cols()) + " columns, leg " +
                          std::to_string(leg) + " has dimension " + std::to_string(t.dim(leg)));
  if (map.rows() < 1) throw InvalidArgument("map must have at least one row");
  auto dims = t.shape().dims();
  dims[leg] = static_cast<std::size_t>(map.rows());
  Tensor out{Shape(dims)};
  const auto rows = static_cast<std::size_t>(map.rows());
  std::vector<cplx> rm(rows * t.dim(leg));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t a = 0; a < t.dim(leg); ++a) rm[r * t.dim(leg) + a] = map(r, a);
  kernels::omp::leg_apply(t.data(), leg_view(t.shape(), leg), rm, rows, out.data());
  return out;
}

Tensor restrict(const Tensor& t, const LinearMapTuple& maps) {
  if (maps.maps.size() != t.order()) throw InvalidArgument("need one map per leg");
  Tensor out = t;
  for (std::size_t leg = 0; leg < t.order(); ++leg) out = apply_leg(out, leg, maps.maps[leg]);
  return out;
}

Tensor direct_sum(const Tensor& t1, const Tensor& t2) {
  check_same_order(t1, t2);
  std::vector<std::size_t> dims(t1.order());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = t1.dim(i) + t2.dim(i);
  Tensor out{Shape(dims)};
  for (std::size_t off = 0; off < t1.size(); ++off) {
    const auto idx = t1.unravel(off);
    out(idx) = t1.data()[off];
  }
  for (std::size_t off = 0; off < t2.size(); ++off) {
    auto idx = t2.unravel(off);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] += t1.dim(i);
    out(idx) = t2.data()[off];
  }
  return out;
}

Tensor kron_product(const Tensor& t1, const Tensor& t2) {
  check_same_order(t1, t2);
  const std::size_t k = t1.order();
  std::vector<std::size_t> dims(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = t1.dim(i) * t2.dim(i);
  Tensor out{Shape(dims)};
  std::vector<std::size_t> idx(k);
  for (std::size_t o1 = 0; o1 < t1.size(); ++o1) {
    const cplx x1 = t1.data()[o1];
    if (x1 == cplx{}) continue;
    const auto i1 = t1.unravel(o1);
    for (std::size_t o2 = 0; o2 < t2.size(); ++o2) {
      const auto i2 = t2.unravel(o2);
      for (std::size_t l = 0; l < k; ++l) idx[l] = i1[l] * t2.dim(l) + i2[l];
      out(idx) = x1 * t2.data()[o2];
    }
  }
  return out;
}

Tensor pad(const Tensor& t, const Shape& shape) {
  if (shape.order() != t.order()) throw InvalidArgument("pad: order mismatch");
  for (std::size_t i = 0; i < shape.order(); ++i)
    if (shape[i] < t.dim(i)) throw InvalidArgument("pad: target shape is smaller than the tensor");
  Tensor out{shape};
  for (std::size_t off = 0; off < t.size(); ++off) out(t.unravel(off)) = t.data()[off];
  return out;
}

std::vector<std::size_t> conciseness_profile(const Tensor& t) {
  std::vector<std::size_t> ranks;
  for (std::size_t leg = 0; leg < t.order(); ++leg) ranks.push_back(numerical_rank(flatten(t, leg)));
  return ranks;
}

bool is_concise(const Tensor& t) {
  const auto r = conciseness_profile(t);
  for (std::size_t leg = 0; leg < t.order(); ++leg)
    if (r[leg] != t.dim(leg)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> support(const Tensor& t, double tol) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t off = 0; off < t.size(); ++off)
    if (std::abs(t.data()[off]) > tol) out.push_back(t.unravel(off));
  return out;
}

Tensor insert_leg(const Tensor& s, const Vector& w, std::size_t leg) {
  if (leg > s.order()) throw InvalidArgument("insert_leg: position out of range");
  if (w.size() < 1) throw InvalidArgument("insert_leg: empty vector");
  auto dims = s.shape().dims();
  dims.insert(dims.begin() + static_cast<std::ptrdiff_t>(leg), static_cast<std::size_t>(w.size()));
  Tensor out{Shape(dims)};
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t off = 0; off < s.size(); ++off) {
    const auto si = s.unravel(off);
    std::copy(si.begin(), si.begin() + static_cast<std::ptrdiff_t>(leg), idx.begin());
    std::copy(si.begin() + static_cast<std::ptrdiff_t>(leg), si.end(),
              idx.begin() + static_cast<std::ptrdiff_t>(leg) + 1);
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      idx[leg] = static_cast<std::size_t>(j);
      out(idx) = s.data()[off] * w[j];
    }
  }
  return out;
}

Tensor permute_legs(const Tensor& t, std::span<const std::size_t> perm) {
  const std::size_t k = t.order();
  if (perm.size() != k) throw InvalidArgument("permutation length must equal tensor order");
  std::vector<bool> seen(k, false);
  for (auto p : perm) {
    if (p >= k || seen[p]) throw InvalidArgument("not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> dims(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = t.dim(perm[i]);
  Tensor out{Shape(dims)};
  std::vector<std::size_t> idx(k);
  for (std::size_t off = 0; off < t.size(); ++off) {
    const auto src = t.unravel(off);
    for (std::size_t i = 0; i < k; ++i) idx[i] = src[perm[i]];
    out(idx) = t.data()[off];
  }
  return out;
}

}  // namespace mpoly
