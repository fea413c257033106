#include "mpoly/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mpoly/linalg.hpp"

namespace mpoly {

namespace {

constexpr double kPinvCutoff = 1e-12;
constexpr double kSupportCutoff = 1e-14;
constexpr double kMaxCondition = 1e8;
constexpr std::size_t kMaxInvertibleDraws = 100;
// Past this condition number of an accumulated map, rounding errors move the
// iterate off the orbit faster than the scaling moves along it.
constexpr double kMaxMapCondition = 1e8;
constexpr double kWitnessTolerance = 1e-8;

double uniform_residual(const Matrix& mu) {
  const auto d = mu.rows();
  return (mu - Matrix::Identity(d, d) / static_cast<double>(d)).norm();
}

double target_residual(const Matrix& mu, const std::vector<double>& target) {
  Matrix diff = mu;
  for (std::size_t i = 0; i < target.size(); ++i) diff(i, i) -= target[i];
  return diff.norm();
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> padded(const std::vector<double>& v, std::size_t n) {
  auto out = v;
  out.resize(std::max(n, v.size()), 0.0);
  return out;
}

SpectrumPoint pad_to(const SpectrumPoint& w, const SpectrumPoint& ref) {
  SpectrumPoint out;
  for (std::size_t i = 0; i < w.blocks.size(); ++i)
    out.blocks.push_back(padded(w.blocks[i], ref.blocks[i].size()));
  return out;
}

Tensor normalized(Tensor t) {
  const double n = t.norm();
  t *= 1.0 / n;
  return t;
}

}  // namespace

void ScalingConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("scaling: epsilon must be positive");
  if (max_iter == 0) throw InvalidArgument("scaling: max_iter must be positive");
  if (restarts == 0) throw InvalidArgument("scaling: restarts must be positive");
  if (!(norm_floor > 0.0 && norm_floor < 1.0))
    throw InvalidArgument("scaling: norm_floor must lie in (0, 1)");
}

double ScalingReport::final_residual() const {
  if (residual_history.empty()) return std::numeric_limits<double>::infinity();
  const auto& r = residual_history.back();
  return *std::max_element(r.begin(), r.end());
}

double l1_distance(const SpectrumPoint& a, const SpectrumPoint& b) {
  if (a.blocks.size() != b.blocks.size()) throw InvalidArgument("spectrum points differ in order");
  double s = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const std::size_t n = std::max(a.blocks[i].size(), b.blocks[i].size());
    const auto x = padded(a.blocks[i], n), y = padded(b.blocks[i], n);
    for (std::size_t j = 0; j < n; ++j) s += std::abs(x[j] - y[j]);
  }
  return s;
}

Matrix uniform_scaling_map(const Matrix& marginal) {
  const auto eig = sorted_eigen(marginal);
  const auto d = eig.values.size();
  const double lmax = eig.values[0];
  double log_det = 0.0;
  RealVector inv_sqrt(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = eig.values[i];
    if (!(l > kPinvCutoff * lmax)) throw NumericalError("marginal is singular");
    log_det += std::log(l);
    inv_sqrt[i] = 1.0 / std::sqrt(l);
  }
  const double scale = std::exp(log_det / (2.0 * static_cast<double>(d)));
  return scale * eig.vectors * inv_sqrt.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

Matrix target_scaling_map(const Matrix& marginal, const std::vector<double>& target) {
  const auto eig = sorted_eigen(marginal);
  const auto d = eig.values.size();
  if (static_cast<std::size_t>(d) != target.size())
    throw InvalidArgument("target length does not match marginal size");
  const double lmax = eig.values[0];
  RealVector w(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = eig.values[i];
    if (!(l > kPinvCutoff * lmax)) throw NumericalError("marginal is singular");
    w[i] = std::sqrt(target[static_cast<std::size_t>(i)] / l);
  }
  return w.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

ScalingReport scale_uniform(const Tensor& t, const ScalingConfig& cfg) {
  cfg.validate();
  if (t.is_zero()) throw ZeroTensorError("scale_uniform on the zero tensor");
  const std::size_t k = t.order();

  ScalingReport rep;
  rep.seed = cfg.seed;
  double norm = t.norm();
  Tensor unit = normalized(t);
  rep.norm_history.push_back(norm);

  while (true) {
    std::vector<Matrix> mu(k);
    std::vector<double> res(k);
    for (std::size_t leg = 0; leg < k; ++leg) {
      mu[leg] = marginal(unit, leg);
      res[leg] = uniform_residual(mu[leg]);
    }
    rep.residual_history.push_back(res);
    if (*std::max_element(res.begin(), res.end()) < cfg.epsilon) {
      rep.converged = true;
      break;
    }
    if (norm < cfg.norm_floor) {
      rep.norm_floor_reached = true;
      break;
    }
    if (rep.iterations >= cfg.max_iter) break;

    const std::size_t leg = argmax(res);
    Matrix g;
    try {
      g = uniform_scaling_map(mu[leg]);
    } catch (const NumericalError&) {
      // Rank-deficient marginal: the infimum over determinant-one scalings is 0.
      rep.support_deficient = true;
      norm = 0.0;
      break;
    }
    unit = apply_leg(unit, leg, g);
    const double shrink = unit.norm();
    unit *= 1.0 / shrink;
    const double next = norm * shrink;
    if (next > norm * (1.0 + 1e-12))
      throw NumericalError("determinant-one step increased the norm: " + std::to_string(norm) +
                           " -> " + std::to_string(next));
    norm = next;
    ++rep.iterations;
    rep.updated_legs.push_back(leg);
    rep.norm_history.push_back(norm);
  }
  rep.final_norm_sl = norm;
  rep.final_tensor = unit;
  rep.final_tensor *= norm;
  return rep;
}

SemistabilityVerdict semistability_test(const Tensor& t, const ScalingConfig& cfg) {
  cfg.validate();
  if (t.is_zero()) throw ZeroTensorError("semistability_test on the zero tensor");
  SemistabilityVerdict v;
  if (!is_concise(t)) {
    v.status = SemistabilityStatus::unstable_evidence;
    v.concise = false;
    v.min_norm = 0.0;
    const auto mm = moment_map(t);
    for (const auto& mu : mm.matrices) v.residual = std::max(v.residual, uniform_residual(mu));
    return v;
  }
  const auto rep = scale_uniform(t, cfg);
  v.iterations = rep.iterations;
  v.residual = rep.final_residual();
  v.min_norm = rep.final_norm_sl;
  if (rep.converged)
    v.status = SemistabilityStatus::semistable_evidence;
  else if (rep.support_deficient || rep.final_norm_sl < cfg.norm_floor)
    v.status = SemistabilityStatus::unstable_evidence;
  return v;
}

namespace {

struct RunResult {
  bool success = false;
  bool ill_conditioned = false;
  double best_delta = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  Tensor tensor;
  LinearMapTuple maps;
  double scale = 1.0;
  SpectrumPoint witness;
  double delta = 0.0;
};

// One seeded run: generic restriction to the support, then alternating
// target scaling.
RunResult membership_run(const Tensor& t, const SpectrumPoint& p,
                         const std::vector<std::size_t>& supp,
                         const std::vector<std::vector<double>>& target, const ScalingConfig& cfg,
                         std::uint64_t seed) {
  const std::size_t k = t.order();
  std::mt19937_64 rng(seed);
  RunResult out;

  LinearMapTuple maps;
  Tensor s;
  bool ok = false;
  for (std::size_t attempt = 0; attempt < cfg.restarts && !ok; ++attempt) {
    maps.maps.clear();
    for (std::size_t leg = 0; leg < k; ++leg) {
      Matrix g;
      std::size_t draws = 0;
      do {
        g = random_gaussian(t.dim(leg), t.dim(leg), rng);
      } while (condition_number(g) >= kMaxCondition && ++draws < kMaxInvertibleDraws);
      maps.maps.push_back(g.topRows(static_cast<Eigen::Index>(supp[leg])));
    }
    s = restrict(t, maps);
    ok = !s.is_zero() && is_concise(s);
  }
  if (!ok) return out;

  double scale = 1.0 / s.norm();
  s *= scale;
  for (std::size_t it = 0;; ++it) {
    std::vector<Matrix> mu(k);
    std::vector<double> res(k);
    SpectrumPoint w;
    for (std::size_t leg = 0; leg < k; ++leg) {
      mu[leg] = marginal(s, leg);
      res[leg] = target_residual(mu[leg], target[leg]);
      w.blocks.push_back(spectrum(mu[leg]));
    }
    const SpectrumPoint wp = pad_to(w, p);
    const double delta = l1_distance(wp, p);
    out.best_delta = std::min(out.best_delta, delta);
    out.iterations = it;
    if (delta < cfg.epsilon) {
      // Only accept a witness the recorded maps actually reproduce.
      Tensor rebuilt = restrict(t, maps);
      rebuilt *= scale;
      double diff = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) diff += std::norm(rebuilt.data()[i] - s.data()[i]);
      if (std::sqrt(diff) > kWitnessTolerance * s.norm()) {
        out.ill_conditioned = true;
        return out;
      }
      out.success = true;
      out.tensor = s;
      out.maps = maps;
      out.scale = scale;
      out.witness = wp;
      out.delta = delta;
      return out;
    }
    if (it >= cfg.max_iter) return out;

    const std::size_t leg = argmax(res);
    Matrix g;
    try {
      g = target_scaling_map(mu[leg], target[leg]);
    } catch (const NumericalError&) {
      return out;
    }
    s = apply_leg(s, leg, g);
    maps.maps[leg] = g * maps.maps[leg];
    if (condition_number(maps.maps[leg]) > kMaxMapCondition) {
      out.ill_conditioned = true;
      return out;
    }
    const double n = s.norm();
    if (!(n > 0.0) || !std::isfinite(n)) return out;
    s *= 1.0 / n;
    scale /= n;
  }
}

}  // namespace

MembershipVerdict membership_test(const Tensor& t, const SpectrumPoint& p, const ScalingConfig& cfg) {
  cfg.validate();
  if (t.is_zero()) throw ZeroTensorError("membership_test on the zero tensor");
  p.validate();
  const std::size_t k = t.order();
  if (p.order() != k) throw InvalidArgument("point has a different number of blocks than the tensor has legs");

  std::vector<std::size_t> supp(k);
  std::vector<std::vector<double>> target(k);
  for (std::size_t leg = 0; leg < k; ++leg) {
    const auto& b = p.blocks[leg];
    supp[leg] = static_cast<std::size_t>(
        std::count_if(b.begin(), b.end(), [](double x) { return x > kSupportCutoff; }));
    if (supp[leg] == 0) throw InvalidArgument("point block has empty support");
    if (supp[leg] > t.dim(leg))
      throw InvalidArgument("point support exceeds tensor dimension on leg " + std::to_string(leg));
    target[leg].assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(supp[leg]));
  }

  MembershipVerdict v;
  v.best_delta = std::numeric_limits<double>::infinity();

  // The input itself is the first candidate.
  {
    const SpectrumPoint own = spec_point(t);
    SpectrumPoint aligned;
    for (std::size_t leg = 0; leg < k; ++leg)
      aligned.blocks.push_back(padded(own.blocks[leg], p.blocks[leg].size()));
    const double delta = l1_distance(aligned, p);
    v.best_delta = delta;
    if (delta < cfg.epsilon) {
      v.status = MembershipStatus::member_evidence;
      v.delta = delta;
      v.witness = aligned;
      v.final_scale = 1.0;
      v.final_tensor = t;
      for (std::size_t leg = 0; leg < k; ++leg)
        v.applied_maps.maps.push_back(Matrix::Identity(t.dim(leg), t.dim(leg)));
      return v;
    }
  }

  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    auto run = membership_run(t, p, supp, target, cfg, mix_seed(cfg.seed, r));
    ++v.runs;
    v.iterations += run.iterations;
    if (run.ill_conditioned) ++v.ill_conditioned_runs;
    v.best_delta = std::min(v.best_delta, run.best_delta);
    if (run.success) {
      v.status = MembershipStatus::member_evidence;
      v.delta = run.delta;
      v.witness = std::move(run.witness);
      v.final_tensor = std::move(run.tensor);
      v.applied_maps = std::move(run.maps);
      v.final_scale = run.scale;
      return v;
    }
  }
  return v;
}

UniformPointVerdict uniform_point_test(const Tensor& t, const std::vector<std::size_t>& dims,
                                       const ScalingConfig& cfg) {
  if (dims.size() != t.order()) throw InvalidArgument("need one dimension per leg");
  SpectrumPoint p;
  for (std::size_t leg = 0; leg < dims.size(); ++leg) {
    if (dims[leg] == 0 || dims[leg] > t.dim(leg))
      throw InvalidArgument("uniform point dimension out of range on leg " + std::to_string(leg));
    std::vector<double> u(dims[leg], 1.0 / static_cast<double>(dims[leg]));
    p.blocks.push_back(std::move(u));
  }
  UniformPointVerdict out{membership_test(t, p, cfg), std::nullopt};
  if (out.membership.member() && out.membership.final_tensor) {
    const Tensor& f = *out.membership.final_tensor;
    bool in_format = true;
    for (std::size_t leg = 0; leg < dims.size(); ++leg) in_format = in_format && f.dim(leg) == dims[leg];
    if (in_format) out.semistable_witness = f;
  }
  return out;
}

double kempf_ness_value(const Tensor& t) {
  const double n2 = t.norm2();
  if (n2 == 0.0) throw ZeroTensorError("Kempf-Ness value of the zero tensor");
  return std::log(n2);
}

const char* to_string(SemistabilityStatus s) {
  switch (s) {
    case SemistabilityStatus::semistable_evidence: return "semistable-evidence";
    case SemistabilityStatus::unstable_evidence: return "unstable-evidence";
    case SemistabilityStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(MembershipStatus s) {
  return s == MembershipStatus::member_evidence ? "member-evidence" : "inconclusive";
}

}  // namespace mpoly
