#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpoly/tensor.hpp"

namespace mpoly {

struct SamplingConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::size_t leg = 0;
  // Include e_i +- e_j for every basis pair.
  bool pairwise = true;
  // Also try the points where rank drops on lines between pairs of
  // directions (all basis pairs and a few random pairs).
  bool pencil_lines = true;
};

/// Slices of a tensor along one leg: slice i is the matrix
/// [T_{.., i, ..}] over the remaining legs (first remaining leg = rows).
struct SliceSpan {
  std::size_t leg = 0;
  std::vector<Matrix> slices;
  std::size_t rank = 0;  // dimension of the span
};

struct RankProfile {
  std::size_t minrank_upper = 0;
  Vector minrank_witness;  // unit norm
  std::size_t maxrank_estimate = 0;
  Vector maxrank_witness;
  std::size_t samples = 0;  // directions evaluated
  std::uint64_t seed = 0;
  bool exact = false;
};

SliceSpan slice_span(const Tensor& t, std::size_t leg = 0);

/// sum_i beta_i slice_i.
Matrix slice_combination(const Tensor& t, std::size_t leg, const Vector& beta);

/// The direction set searched by minrank_upper/maxrank: basis vectors, then
/// (optionally) e_i + e_j and e_i - e_j for i < j, then `samples` complex
/// Gaussian directions. Generated up front from the seed.
std::vector<Vector> search_directions(std::size_t dim, const SamplingConfig& cfg);

/// Rank-drop points on the lines x_i + t x_j between pairs of slice
/// combinations, found as eigenvalues of a randomly projected square pencil.
/// Exact for tensors with two slices.
std::vector<Vector> pencil_line_directions(const SliceSpan& span, const SamplingConfig& cfg);

/// Smallest nonzero slice-combination rank over the direction set and the
/// pencil line points (an upper bound on the minrank) together with the
/// largest rank seen.
RankProfile minrank_upper(const Tensor& t, const SamplingConfig& cfg = {});

/// Largest rank over random directions plus the all-ones direction.
std::size_t maxrank(const Tensor& t, const SamplingConfig& cfg = {});

/// Same computations on one thread; kept as the reference for the OpenMP path.
RankProfile minrank_upper_serial(const Tensor& t, const SamplingConfig& cfg = {});

/// Structural certificate for minrank(P_{a,b}) = b. For each possible first
/// nonzero coordinate i of beta, columns i .. i+b-1 of the combination form an
/// upper triangular b x b block whose diagonal is exactly beta_i; read off the
/// support pattern of poly_mult_tensor(a, b).
struct PolyMultCertificate {
  std::size_t minrank = 0;
  std::vector<std::size_t> block_start;  // per first-nonzero coordinate i
  bool verified = false;
};
PolyMultCertificate minrank_poly_mult_exact(std::size_t a, std::size_t b);

/// n - floor(sqrt(d - 1)), for 1 <= d <= n^2.
std::size_t subspace_low_rank_bound(std::size_t n, std::size_t d);

/// n (n - floor(sqrt(a - 1))): minrank bound for concise degenerations of M_n
/// with first dimension a.
std::size_t matmul_degeneration_bound(std::size_t n, std::size_t a);

enum class SeparationVerdict { separated, not_separated, out_of_format };

struct SeparationReport {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t pencil_minrank = 0;  // c - 1, certified
  std::size_t matmul_bound = 0;    // n (n - 1)
  SeparationVerdict verdict = SeparationVerdict::not_separated;
};

/// Compares minrank(P_c) = c - 1 with the bound n(n-1) for degenerations of
/// M_n into 2 x (c-1) x c. c > n^2 does not fit the format of M_n.
SeparationReport separation_check(std::size_t n, std::size_t c);

struct BorderSubrankBound {
  std::size_t bound = 0;  // ceil(3 n^2 / 4)
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Throws std::logic_error if b <= n(n - floor(sqrt(a-1))) or
/// a + b - 2 != ceil(3n^2/4).
BorderSubrankBound border_subrank_bound(std::size_t n);

struct Rank1Factorization {
  Tensor s;
  Vector w;
  double relative_residual = 0.0;
};

/// If flatten(t, leg) has numerical rank one, returns S, w with
/// T = S (x) w (w on position `leg`).
std::optional<Rank1Factorization> rank1_factor_check(const Tensor& t, std::size_t leg);

/// The map U of the rank-one peeling step for IMM: with A_k = w u^*,
/// (A_1 (x) ... (x) A_{k-1} (x) A_k) IMM_n^k
///   = ((A_1 (x) ... (x) A_{k-1} U) IMM_n^{k-1}) (x) w.
Matrix imm_peel_map(std::size_t n, const Vector& u);

using IndexTriple = std::array<std::size_t, 3>;

struct TightnessCheck {
  bool zero_sum = false;
  bool injective = false;
  bool tight() const { return zero_sum && injective; }
};

/// f[l][i] is the label of coordinate i on leg l.
TightnessCheck tight_certificate_check(const std::vector<IndexTriple>& support,
                                       const std::array<std::vector<long>, 3>& f);

/// min over legs of 2^{H(p_l)} for the leg marginals p_l of p (base-2 entropy).
double support_entropy_rate(const std::vector<IndexTriple>& support, const std::vector<double>& p);

/// Max of support_entropy_rate over the grid {m / steps} of the simplex on
/// the support.
struct EntropyGridResult {
  double rate = 0.0;
  std::vector<double> p;
};
EntropyGridResult support_entropy_rate_grid(const std::vector<IndexTriple>& support, std::size_t steps);

std::vector<IndexTriple> support_triples(const Tensor& t);

const char* to_string(SeparationVerdict v);

}  // namespace mpoly
