#include <cstdint>

#include "mpoly/kernels.hpp"

namespace mpoly::kernels::omp {

void leg_gram(std::span<const cplx> x, LegView v, std::span<cplx> gram) {
  const auto dim = static_cast<std::int64_t>(v.dim);
  const bool wide = v.dim * v.dim * v.outer * v.inner >= kParallelThreshold;
  // Only the upper triangle is accumulated; the lower one is its conjugate,
  // which matches the serial loop exactly because conj is exact.
#pragma omp parallel for schedule(dynamic) if (wide)
  for (std::int64_t ai = 0; ai < dim; ++ai) {
    const auto a = static_cast<std::size_t>(ai);
    for (std::size_t b = a; b < v.dim; ++b) {
      cplx acc{0.0, 0.0};
      for (std::size_t p = 0; p < v.outer; ++p) {
        const cplx* xa = x.data() + (p * v.dim + a) * v.inner;
        const cplx* xb = x.data() + (p * v.dim + b) * v.inner;
        for (std::size_t q = 0; q < v.inner; ++q) acc += xa[q] * std::conj(xb[q]);
      }
      gram[a * v.dim + b] = acc;
      if (b != a) gram[b * v.dim + a] = std::conj(acc);
    }
  }
}

void leg_apply(std::span<const cplx> x, LegView v, std::span<const cplx> map,
               std::size_t rows, std::span<cplx> y) {
  const auto tasks = static_cast<std::int64_t>(v.outer * rows);
  const bool wide = v.outer * rows * v.dim * v.inner >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
  for (std::int64_t t = 0; t < tasks; ++t) {
    const auto p = static_cast<std::size_t>(t) / rows;
    const auto r = static_cast<std::size_t>(t) % rows;
    cplx* out = y.data() + (p * rows + r) * v.inner;
    for (std::size_t q = 0; q < v.inner; ++q) out[q] = cplx{0.0, 0.0};
    for (std::size_t a = 0; a < v.dim; ++a) {
      const cplx m = map[r * v.dim + a];
      if (m == cplx{0.0, 0.0}) continue;
      const cplx* in = x.data() + (p * v.dim + a) * v.inner;
      for (std::size_t q = 0; q < v.inner; ++q) out[q] += m * in[q];
    }
  }
}

}  // namespace mpoly::kernels::omp
