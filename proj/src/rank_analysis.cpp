#include "mpoly/rank_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "mpoly/constructions.hpp"
#include "mpoly/linalg.hpp"

namespace mpoly {

namespace {

std::size_t isqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

void check_order3(const Tensor& t, const char* op) {
  if (t.order() != 3) throw InvalidArgument(std::string(op) + " needs an order-3 tensor");
  if (t.is_zero()) throw ZeroTensorError(std::string(op) + " on the zero tensor");
}

Vector normalized(Vector v) {
  v /= v.norm();
  return v;
}

// Ranks of all direction combinations; -1 marks a zero combination.
template <bool Parallel>
std::vector<long> direction_ranks(const SliceSpan& span, const std::vector<Vector>& dirs) {
  std::vector<long> ranks(dirs.size());
  const auto n = static_cast<std::int64_t>(dirs.size());
  auto eval = [&](std::int64_t d) {
    Matrix m = Matrix::Zero(span.slices[0].rows(), span.slices[0].cols());
    const Vector& beta = dirs[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < span.slices.size(); ++i)
      if (beta[static_cast<Eigen::Index>(i)] != cplx{}) m += beta[static_cast<Eigen::Index>(i)] * span.slices[i];
    const auto r = numerical_rank(m);
    ranks[static_cast<std::size_t>(d)] = (m.cwiseAbs().maxCoeff() == 0.0) ? -1 : static_cast<long>(r);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t d = 0; d < n; ++d) eval(d);
  } else {
    for (std::int64_t d = 0; d < n; ++d) eval(d);
  }
  return ranks;
}

template <bool Parallel>
RankProfile minrank_impl(const Tensor& t, const SamplingConfig& cfg) {
  check_order3(t, "minrank_upper");
  const SliceSpan span = slice_span(t, cfg.leg);
  auto dirs = search_directions(t.dim(cfg.leg), cfg);
  if (cfg.pencil_lines) {
    auto extra = pencil_line_directions(span, cfg);
    dirs.insert(dirs.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  }
  const auto ranks = direction_ranks<Parallel>(span, dirs);
  RankProfile prof;
  prof.seed = cfg.seed;
  prof.samples = dirs.size();
  long best = std::numeric_limits<long>::max(), worst = -1;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    if (ranks[d] < 1) continue;
    if (ranks[d] < best) {
      best = ranks[d];
      prof.minrank_witness = normalized(dirs[d]);
    }
    if (ranks[d] > worst) {
      worst = ranks[d];
      prof.maxrank_witness = normalized(dirs[d]);
    }
  }
  if (worst < 1) throw NumericalError("every slice combination vanished");
  prof.minrank_upper = static_cast<std::size_t>(best);
  prof.maxrank_estimate = static_cast<std::size_t>(worst);
  return prof;
}

}  // namespace

SliceSpan slice_span(const Tensor& t, std::size_t leg) {
  if (leg >= t.order()) throw InvalidArgument("slice_span: leg out of range");
  const Matrix f = flatten(t, leg);
  std::size_t rows = 0;
  for (std::size_t l = 0; l < t.order(); ++l)
    if (l != leg) {
      rows = t.dim(l);
      break;
    }
  const std::size_t cols = t.shape().complement(leg) / rows;
  SliceSpan span;
  span.leg = leg;
  for (std::size_t i = 0; i < t.dim(leg); ++i) {
    Matrix s(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) s(r, c) = f(i, r * cols + c);
    span.slices.push_back(std::move(s));
  }
  span.rank = numerical_rank(f);
  return span;
}

Matrix slice_combination(const Tensor& t, std::size_t leg, const Vector& beta) {
  if (leg >= t.order()) throw InvalidArgument("slice_combination: leg out of range");
  if (static_cast<std::size_t>(beta.size()) != t.dim(leg))
    throw InvalidArgument("slice_combination: beta has the wrong length");
  if (beta.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("slice_combination: beta is zero");
  const SliceSpan span = slice_span(t, leg);
  Matrix m = Matrix::Zero(span.slices[0].rows(), span.slices[0].cols());
  for (std::size_t i = 0; i < span.slices.size(); ++i) m += beta[static_cast<Eigen::Index>(i)] * span.slices[i];
  return m;
}

std::vector<Vector> search_directions(std::size_t dim, const SamplingConfig& cfg) {
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < dim; ++i) dirs.push_back(Vector::Unit(dim, i));
  if (cfg.pairwise)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        dirs.push_back(Vector::Unit(dim, i) + Vector::Unit(dim, j));
        dirs.push_back(Vector::Unit(dim, i) - Vector::Unit(dim, j));
      }
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t s = 0; s < cfg.samples; ++s) dirs.push_back(random_gaussian_vector(dim, rng));
  return dirs;
}

std::vector<Vector> pencil_line_directions(const SliceSpan& span, const SamplingConfig& cfg) {
  const std::size_t dim = span.slices.size();
  if (dim < 2) return {};
  const Eigen::Index rows = span.slices[0].rows(), cols = span.slices[0].cols();
  const Eigen::Index m = std::min(rows, cols);
  std::mt19937_64 rng(mix_seed(cfg.seed, 0x70656e63696cULL));

  std::vector<std::pair<Vector, Vector>> lines;
  const std::size_t nb = std::min<std::size_t>(dim, 16);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j) lines.emplace_back(Vector::Unit(dim, i), Vector::Unit(dim, j));
  for (int r = 0; r < 8; ++r) {
    Vector x = random_gaussian_vector(dim, rng);
    lines.emplace_back(std::move(x), random_gaussian_vector(dim, rng));
  }

  auto combine = [&](const Vector& beta) {
    Matrix out = Matrix::Zero(rows, cols);
    for (std::size_t i = 0; i < dim; ++i)
      if (beta[static_cast<Eigen::Index>(i)] != cplx{}) out += beta[static_cast<Eigen::Index>(i)] * span.slices[i];
    return out;
  };
  // Square the pencil with a random projection on the longer side; every
  // rank drop of the original survives the projection.
  const Matrix proj = random_gaussian(static_cast<std::size_t>(std::max(rows, cols)), static_cast<std::size_t>(m), rng);
  auto square = [&](const Matrix& x) -> Matrix {
    if (rows <= cols) return x * proj;
    return proj.transpose() * x;
  };

  std::vector<Vector> out;
  for (const auto& [u, v] : lines) {
    const Matrix a = square(combine(u)), b = square(combine(v));
    Eigen::PartialPivLU<Matrix> lu(b);
    if (condition_number(b) > 1e12) continue;
    const Matrix pencil = -lu.solve(a);
    Eigen::ComplexEigenSolver<Matrix> es(pencil, false);
    if (es.info() != Eigen::Success) continue;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(u + es.eigenvalues()[k] * v);
  }
  return out;
}

RankProfile minrank_upper(const Tensor& t, const SamplingConfig& cfg) { return minrank_impl<true>(t, cfg); }

RankProfile minrank_upper_serial(const Tensor& t, const SamplingConfig& cfg) {
  return minrank_impl<false>(t, cfg);
}

std::size_t maxrank(const Tensor& t, const SamplingConfig& cfg) {
  check_order3(t, "maxrank");
  const SliceSpan span = slice_span(t, cfg.leg);
  const std::size_t dim = t.dim(cfg.leg);
  std::vector<Vector> dirs{Vector::Ones(dim)};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t s = 0; s < cfg.samples; ++s) dirs.push_back(random_gaussian_vector(dim, rng));
  const auto ranks = direction_ranks<true>(span, dirs);
  const long best = *std::max_element(ranks.begin(), ranks.end());
  return best < 0 ? 0 : static_cast<std::size_t>(best);
}

PolyMultCertificate minrank_poly_mult_exact(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw InvalidArgument("minrank_poly_mult_exact: a and b must be >= 1");
  const Tensor p = poly_mult_tensor(a, b);
  const std::size_t cols = a + b - 1;
  PolyMultCertificate cert;
  cert.verified = true;
  for (std::size_t i = 0; i < a; ++i) {
    // Coefficients beta_{i'} with i' < i vanish; entry (j, col) of the
    // combination is a linear form in the beta_{i'} with P[i', j, col] != 0.
    auto live = [&](std::size_t j, std::size_t col) {
      std::set<std::size_t> s;
      for (std::size_t ip = i; ip < a; ++ip)
        if (p.at({ip, j, col}) != cplx{}) s.insert(ip);
      return s;
    };
    bool ok = i + b <= cols;
    for (std::size_t j = 0; ok && j < b; ++j)
      for (std::size_t m = 0; ok && m < b; ++m) {
        const auto s = live(j, i + m);
        if (j > m) ok = s.empty();
        else if (j == m) ok = s == std::set<std::size_t>{i};
      }
    cert.block_start.push_back(i);
    cert.verified = cert.verified && ok;
  }
  if (!cert.verified) throw std::logic_error("triangular block certificate failed");
  // Rank >= b from the triangular block, <= b from the row count.
  cert.minrank = b;
  return cert;
}

std::size_t subspace_low_rank_bound(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1 || d > n * n) throw InvalidArgument("subspace_low_rank_bound: need 1 <= d <= n^2");
  return n - isqrt(d - 1);
}

std::size_t matmul_degeneration_bound(std::size_t n, std::size_t a) {
  if (n < 1 || a < 1) throw InvalidArgument("matmul_degeneration_bound: n and a must be >= 1");
  const std::size_t s = isqrt(a - 1);
  if (s > n) throw InvalidArgument("matmul_degeneration_bound: a exceeds n^2 + 1");
  return n * (n - s);
}

SeparationReport separation_check(std::size_t n, std::size_t c) {
  if (n < 1 || c < 2) throw InvalidArgument("separation_check: need n >= 1 and c >= 2");
  SeparationReport rep;
  rep.n = n;
  rep.c = c;
  rep.pencil_minrank = minrank_poly_mult_exact(2, c - 1).minrank;
  rep.matmul_bound = matmul_degeneration_bound(n, 2);
  if (c > n * n)
    rep.verdict = SeparationVerdict::out_of_format;
  else if (rep.pencil_minrank > rep.matmul_bound)
    rep.verdict = SeparationVerdict::separated;
  else
    rep.verdict = SeparationVerdict::not_separated;
  return rep;
}

BorderSubrankBound border_subrank_bound(std::size_t n) {
  if (n < 1) throw InvalidArgument("border_subrank_bound: n must be >= 1");
  BorderSubrankBound r;
  if (n % 2 == 0) {
    r.a = n * n / 4 + 1;
    r.b = n * n / 2 + 1;
  } else {
    r.a = (n - 1) * (n - 1) / 4 + 1;
    r.b = n * (n + 1) / 2 + 1;
  }
  r.bound = (3 * n * n + 3) / 4;
  if (!(r.b > matmul_degeneration_bound(n, r.a)))
    throw std::logic_error("border subrank: b <= n(n - floor(sqrt(a-1))) for n = " + std::to_string(n));
  if (r.a + r.b - 2 != r.bound)
    throw std::logic_error("border subrank: a + b - 2 != ceil(3n^2/4) for n = " + std::to_string(n));
  return r;
}

std::optional<Rank1Factorization> rank1_factor_check(const Tensor& t, std::size_t leg) {
  if (t.order() < 3) throw InvalidArgument("rank1_factor_check needs order >= 3");
  if (leg >= t.order()) throw InvalidArgument("rank1_factor_check: leg out of range");
  if (t.is_zero()) throw ZeroTensorError("rank1_factor_check on the zero tensor");
  const Matrix f = flatten(t, leg);
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > kRankTolerance * sv[0]) ++rank;
  if (rank != 1) return std::nullopt;

  auto dims = t.shape().dims();
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(leg));
  const Vector coeffs = sv[0] * svd.matrixV().col(0).conjugate();
  Tensor s{Shape(dims), std::vector<cplx>(coeffs.data(), coeffs.data() + coeffs.size())};
  Vector w = svd.matrixU().col(0);
  const Tensor back = insert_leg(s, w, leg);
  double diff = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) diff += std::norm(back.data()[i] - t.data()[i]);
  const double rel = std::sqrt(diff) / t.norm();
  if (rel > kRankTolerance) return std::nullopt;
  return Rank1Factorization{std::move(s), std::move(w), rel};
}

Matrix imm_peel_map(std::size_t n, const Vector& u) {
  if (static_cast<std::size_t>(u.size()) != n * n) throw InvalidArgument("imm_peel_map: u must have length n^2");
  Matrix m = Matrix::Zero(n * n, n * n);
  // e_{(x, y)} -> sum_z conj(u_{(z, y)}) e_{(x, z)}.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) m(x * n + z, x * n + y) = std::conj(u[z * n + y]);
  return m;
}

TightnessCheck tight_certificate_check(const std::vector<IndexTriple>& support,
                                       const std::array<std::vector<long>, 3>& f) {
  TightnessCheck out;
  out.zero_sum = true;
  for (const auto& s : support) {
    for (std::size_t l = 0; l < 3; ++l)
      if (s[l] >= f[l].size()) throw InvalidArgument("tight_certificate_check: map undefined on a support index");
    if (f[0][s[0]] + f[1][s[1]] + f[2][s[2]] != 0) out.zero_sum = false;
  }
  out.injective = true;
  for (const auto& fl : f) {
    const std::set<long> vals(fl.begin(), fl.end());
    if (vals.size() != fl.size()) out.injective = false;
  }
  return out;
}

double support_entropy_rate(const std::vector<IndexTriple>& support, const std::vector<double>& p) {
  if (support.empty() || p.size() != support.size())
    throw InvalidArgument("support_entropy_rate: need one weight per support element");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("support_entropy_rate: negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("support_entropy_rate: weights must sum to 1");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < 3; ++l) {
    std::map<std::size_t, double> marg;
    for (std::size_t i = 0; i < support.size(); ++i) marg[support[i][l]] += p[i];
    double h = 0.0;
    for (const auto& [idx, m] : marg)
      if (m > 0.0) h -= m * std::log2(m);
    best = std::min(best, std::exp2(h));
  }
  return best;
}

EntropyGridResult support_entropy_rate_grid(const std::vector<IndexTriple>& support, std::size_t steps) {
  const std::size_t m = support.size();
  if (m == 0 || steps == 0) throw InvalidArgument("support_entropy_rate_grid: empty support or grid");
  double count = 1.0;
  for (std::size_t i = 1; i < m; ++i) count = count * static_cast<double>(steps + i) / static_cast<double>(i);
  if (count > 1e7) throw InvalidArgument("support_entropy_rate_grid: grid too large");
  EntropyGridResult best;
  best.rate = -1.0;
  std::vector<std::size_t> parts(m, 0);
  std::vector<double> p(m);
  auto visit = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == m) {
      parts[i] = left;
      for (std::size_t k = 0; k < m; ++k) p[k] = static_cast<double>(parts[k]) / static_cast<double>(steps);
      const double r = support_entropy_rate(support, p);
      if (r > best.rate + 1e-15) best = {r, p};
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      parts[i] = x;
      self(self, i + 1, left - x);
    }
  };
  visit(visit, 0, steps);
  return best;
}

std::vector<IndexTriple> support_triples(const Tensor& t) {
  if (t.order() != 3) throw InvalidArgument("support_triples needs an order-3 tensor");
  std::vector<IndexTriple> out;
  for (const auto& idx : support(t)) out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

const char* to_string(SeparationVerdict v) {
  switch (v) {
    case SeparationVerdict::separated: return "separated";
    case SeparationVerdict::not_separated: return "not-separated";
    case SeparationVerdict::out_of_format: return "out-of-format";
  }
  return "?";
}

}  // namespace mpoly
