#include "mpoly/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace mpoly {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

Tensor unit_tensor(std::size_t r, std::size_t k) {
  require(r >= 1, "unit tensor: r must be >= 1");
  require(k >= 2, "unit tensor: order must be >= 2");
  Tensor t{Shape(std::vector<std::size_t>(k, r))};
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < r; ++j) {
    std::fill(idx.begin(), idx.end(), j);
    t(idx) = 1.0;
  }
  return t;
}

Tensor matmul_tensor(std::size_t n1, std::size_t n2, std::size_t n3) {
  require(n1 >= 1 && n2 >= 1 && n3 >= 1, "matmul tensor: dimensions must be >= 1");
  Tensor t{Shape{n1 * n2, n2 * n3, n3 * n1}};
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n3; ++k) t.at({i * n2 + j, j * n3 + k, k * n1 + i}) = 1.0;
  return t;
}

Tensor imm_tensor(std::size_t n, std::size_t k) {
  require(n >= 1, "imm tensor: n must be >= 1");
  require(k >= 3, "imm tensor: k must be >= 3");
  Tensor t{Shape(std::vector<std::size_t>(k, n * n))};
  std::vector<std::size_t> i(k, 0), idx(k);
  while (true) {
    for (std::size_t l = 0; l < k; ++l) idx[l] = i[l] * n + i[(l + 1) % k];
    t(idx) = 1.0;
    std::size_t p = k;
    while (p > 0 && ++i[p - 1] == n) i[--p] = 0;
    if (p == 0) break;
  }
  return t;
}

Tensor poly_mult_tensor(std::size_t a, std::size_t b) {
  require(a >= 1 && b >= 1, "poly mult tensor: a and b must be >= 1");
  Tensor t{Shape{a, b, a + b - 1}};
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) t.at({i, j, i + j}) = 1.0;
  return t;
}

Tensor pencil_tensor(std::size_t c) {
  require(c >= 2, "pencil: c must be >= 2");
  return poly_mult_tensor(2, c - 1);
}

Tensor balanced_pencil(std::size_t c) {
  require(c >= 2, "balanced pencil: c must be >= 2");
  Tensor t{Shape{2, c - 1, c}};
  for (std::size_t j = 0; j + 1 < c; ++j) {
    t.at({0, j, j}) = std::sqrt(static_cast<double>(c - 1 - j));
    t.at({1, j, j + 1}) = std::sqrt(static_cast<double>(j + 1));
  }
  return t;
}

Tensor bci_tensor(std::vector<double> q) {
  const std::size_t n = q.size();
  require(n >= 1, "bci tensor: q must be nonempty");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(q[i]) && q[i] >= 0.0, "bci tensor: q entries must be >= 0");
    require(i == 0 || q[i] <= q[i - 1] + 1e-12, "bci tensor: q must be nonincreasing");
    sum += q[i];
  }
  require(std::abs(sum - 1.0) <= 1e-10, "bci tensor: q must sum to 1");
  std::sort(q.begin(), q.end(), std::greater<>());
  // n = 1 gives a 1 x 1 x 1 tensor, which Shape allows.
  Tensor t{Shape{n, n, n}};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k) {
      const double phase = step * static_cast<double>((j * k) % n);
      t.at({j - 1, k - 1, k - 1}) = std::sqrt(q[j - 1]) * std::polar(1.0, phase);
    }
  return t;
}

Tensor wedge3() {
  Tensor t{Shape{3, 3, 3}};
  t.at({0, 1, 2}) = 1.0;
  t.at({0, 2, 1}) = -1.0;
  t.at({1, 2, 0}) = 1.0;
  t.at({1, 0, 2}) = -1.0;
  t.at({2, 0, 1}) = 1.0;
  t.at({2, 1, 0}) = -1.0;
  return t;
}

Tensor zero_tensor(const Shape& shape) { return Tensor{shape}; }

LinearMapTuple unit_to_poly_mult_maps(std::size_t a, std::size_t b) {
  require(a >= 1 && b >= 1, "unit_to_poly_mult_maps: a and b must be >= 1");
  const std::size_t r = a + b - 1;
  std::vector<cplx> x(r);
  for (std::size_t t = 0; t < r; ++t)
    x[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(r));
  Matrix va(a, r), vb(b, r), v(r, r);
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t i = 0; i < a; ++i) va(i, t) = std::pow(x[t], static_cast<int>(i));
    for (std::size_t j = 0; j < b; ++j) vb(j, t) = std::pow(x[t], static_cast<int>(j));
    for (std::size_t m = 0; m < r; ++m) v(t, m) = std::pow(x[t], static_cast<int>(m));
  }
  // sum_t x_t^m C e_t = e_m, i.e. C V = I.
  return {{va, vb, v.inverse()}};
}

LinearMapTuple pencil_balancing_maps(std::size_t c) {
  require(c >= 2, "pencil_balancing_maps: c must be >= 2");
  // gamma_l = 1 / sqrt(binom(c-1, l)), beta_j = sqrt(c-1-j) / gamma_j.
  Matrix a = Matrix::Identity(2, 2);
  Matrix b = Matrix::Zero(c - 1, c - 1);
  Matrix g = Matrix::Zero(c, c);
  for (std::size_t l = 0; l < c; ++l) g(l, l) = 1.0 / std::sqrt(binomial(c - 1, l));
  for (std::size_t j = 0; j + 1 < c; ++j)
    b(j, j) = std::sqrt(static_cast<double>(c - 1 - j) * binomial(c - 1, j));
  return {{a, b, g}};
}

Matrix imm_diagonal_collapse_map(std::size_t n, double scale) {
  require(n >= 1, "imm_diagonal_collapse_map: n must be >= 1");
  Matrix d = Matrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) d(0, i * n + i) = scale;
  return d;
}

Matrix matmul_a1b_reconstruction_map(const Tensor& s) {
  require(s.order() == 3, "reconstruction map needs an order-3 tensor");
  const std::size_t a = s.dim(0), b = s.dim(1);
  require(s.dim(2) == a * b, "reconstruction map needs format a x b x ab");
  // M_{a,1,b} = sum_{i,j} e_i (x) e_j (x) e_{j*a+i}: e_{j,i} of the b x a matrix
  // units, flattened row-major, sits at j*a + i.
  Matrix m(a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t kl = 0; kl < a * b; ++kl) m(kl, j * a + i) = s.at({i, j, kl});
  return m;
}

std::vector<double> uniform_vector(std::size_t n, std::size_t length) {
  require(n >= 1, "uniform vector: n must be >= 1");
  std::vector<double> u(std::max(n, length), 0.0);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 / static_cast<double>(n);
  return u;
}

ConstructionKind parse_construction_kind(const std::string& name) {
  if (name == "unit") return ConstructionKind::unit;
  if (name == "matmul") return ConstructionKind::matmul;
  if (name == "imm") return ConstructionKind::imm;
  if (name == "polymul") return ConstructionKind::polymul;
  if (name == "pencil") return ConstructionKind::pencil;
  if (name == "balanced-pencil") return ConstructionKind::balanced_pencil;
  if (name == "bci") return ConstructionKind::bci;
  if (name == "wedge3") return ConstructionKind::wedge3;
  if (name == "zero") return ConstructionKind::zero;
  throw InvalidArgument("unknown construction kind '" + name + "'");
}

std::string to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::unit: return "unit";
    case ConstructionKind::matmul: return "matmul";
    case ConstructionKind::imm: return "imm";
    case ConstructionKind::polymul: return "polymul";
    case ConstructionKind::pencil: return "pencil";
    case ConstructionKind::balanced_pencil: return "balanced-pencil";
    case ConstructionKind::bci: return "bci";
    case ConstructionKind::wedge3: return "wedge3";
    case ConstructionKind::zero: return "zero";
  }
  return "?";
}

Tensor construct(const ConstructionSpec& spec) {
  const auto& p = spec.params;
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi)
      throw InvalidArgument("wrong number of params for kind " + to_string(spec.kind));
  };
  switch (spec.kind) {
    case ConstructionKind::unit:
      want(1, 2);
      return unit_tensor(p[0], p.size() > 1 ? p[1] : 3);
    case ConstructionKind::matmul:
      want(1, 3);
      return p.size() == 1 ? matmul_tensor(p[0], p[0], p[0]) : (want(3, 3), matmul_tensor(p[0], p[1], p[2]));
    case ConstructionKind::imm:
      want(2, 2);
      return imm_tensor(p[0], p[1]);
    case ConstructionKind::polymul:
      want(2, 2);
      return poly_mult_tensor(p[0], p[1]);
    case ConstructionKind::pencil:
      want(1, 1);
      return pencil_tensor(p[0]);
    case ConstructionKind::balanced_pencil:
      want(1, 1);
      return balanced_pencil(p[0]);
    case ConstructionKind::bci:
      want(0, 1);
      if (!p.empty() && p[0] != spec.q.size())
        throw InvalidArgument("bci: n does not match the length of q");
      return bci_tensor(spec.q);
    case ConstructionKind::wedge3:
      want(0, 0);
      return wedge3();
    case ConstructionKind::zero:
      want(2, 64);
      return zero_tensor(Shape(p));
  }
  throw InvalidArgument("unhandled construction kind");
}

}  // namespace mpoly
