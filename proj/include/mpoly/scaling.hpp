#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpoly/tensor.hpp"

namespace mpoly {

struct ScalingConfig {
  double epsilon = 1e-8;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0;
  std::size_t restarts = 5;
  double norm_floor = 1e-12;

  void validate() const;

  // Frobenius threshold for uniform scaling.
  static ScalingConfig uniform() { return {}; }
  // l1 threshold on spectra for membership.
  static ScalingConfig membership() {
    ScalingConfig c;
    c.epsilon = 1e-6;
    return c;
  }
};

/// Transcript of a uniform (SL) scaling run. residual_history[t] holds the
/// per-leg ||mu_i - I/d_i||_F before step t; norm_history[t] the norm of the
/// determinant-one scaled tensor at that point.
struct ScalingReport {
  std::size_t iterations = 0;
  std::vector<std::vector<double>> residual_history;
  std::vector<double> norm_history;
  std::vector<std::size_t> updated_legs;
  Tensor final_tensor;
  bool converged = false;
  bool support_deficient = false;
  bool norm_floor_reached = false;
  double final_norm_sl = 0.0;
  std::uint64_t seed = 0;

  double final_residual() const;
};

enum class SemistabilityStatus { semistable_evidence, unstable_evidence, inconclusive };

struct SemistabilityVerdict {
  SemistabilityStatus status = SemistabilityStatus::inconclusive;
  double residual = 0.0;
  double min_norm = 0.0;
  bool concise = true;
  std::size_t iterations = 0;
};

enum class MembershipStatus { member_evidence, inconclusive };

/// One-sided membership evidence. When status is member_evidence,
///   final_tensor == final_scale * restrict(T, applied_maps)
/// and witness == spec_point(final_tensor), zero padded to the target's
/// block lengths. `inconclusive` never certifies non-membership.
struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::inconclusive;
  double delta = 0.0;
  std::optional<SpectrumPoint> witness;
  double best_delta = 0.0;
  std::size_t runs = 0;
  // Runs abandoned because the accumulated maps became too ill-conditioned
  // to trust the iterate (or the final witness failed to rebuild).
  std::size_t ill_conditioned_runs = 0;
  std::size_t iterations = 0;
  std::optional<Tensor> final_tensor;
  LinearMapTuple applied_maps;
  double final_scale = 1.0;

  bool member() const { return status == MembershipStatus::member_evidence; }
};

struct UniformPointVerdict {
  MembershipVerdict membership;
  // Restriction of T with (numerically) uniform marginals in format (a, b, c).
  std::optional<Tensor> semistable_witness;
};

/// det(mu)^{1/(2d)} mu^{-1/2}: the determinant-one map making mu proportional
/// to the identity.
Matrix uniform_scaling_map(const Matrix& marginal);

/// diag(target)^{1/2} Lambda^{-1/2} U^* for marginal = U Lambda U^* with
/// eigenvalues sorted nonincreasing; afterwards the marginal is diag(target).
Matrix target_scaling_map(const Matrix& marginal, const std::vector<double>& target);

/// Alternating determinant-one scaling towards uniform marginals, always
/// updating the leg with the largest Frobenius residual.
ScalingReport scale_uniform(const Tensor& t, const ScalingConfig& cfg = ScalingConfig::uniform());

SemistabilityVerdict semistability_test(const Tensor& t,
                                        const ScalingConfig& cfg = ScalingConfig::uniform());

/// Searches the orbit closure of t for a tensor with spectrum point p.
/// Legs are restricted generically to the support sizes of p, then scaled
/// leg by leg towards diag(p_i).
MembershipVerdict membership_test(const Tensor& t, const SpectrumPoint& p,
                                  const ScalingConfig& cfg = ScalingConfig::membership());

/// membership_test with p = (u_{dims[0]} | u_{dims[1]} | ...).
UniformPointVerdict uniform_point_test(const Tensor& t, const std::vector<std::size_t>& dims,
                                       const ScalingConfig& cfg = ScalingConfig::membership());

/// log ||T||^2.
double kempf_ness_value(const Tensor& t);

/// Sum over legs of the l1 distance between blocks, each pair zero padded to
/// a common length.
double l1_distance(const SpectrumPoint& a, const SpectrumPoint& b);

const char* to_string(SemistabilityStatus s);
const char* to_string(MembershipStatus s);

}  // namespace mpoly
