#include "mpoly/kernels.hpp"

namespace mpoly::kernels::serial {

void leg_gram(std::span<const cplx> x, LegView v, std::span<cplx> gram) {
  for (std::size_t a = 0; a < v.dim; ++a) {
    for (std::size_t b = 0; b < v.dim; ++b) {
      cplx acc{0.0, 0.0};
      for (std::size_t p = 0; p < v.outer; ++p) {
        const cplx* xa = x.data() + (p * v.dim + a) * v.inner;
        const cplx* xb = x.data() + (p * v.dim + b) * v.inner;
        for (std::size_t q = 0; q < v.inner; ++q) acc += xa[q] * std::conj(xb[q]);
      }
      gram[a * v.dim + b] = acc;
    }
  }
}

void leg_apply(std::span<const cplx> x, LegView v, std::span<const cplx> map,
               std::size_t rows, std::span<cplx> y) {
  for (std::size_t p = 0; p < v.outer; ++p) {
    for (std::size_t r = 0; r < rows; ++r) {
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
}

}  // namespace mpoly::kernels::serial
