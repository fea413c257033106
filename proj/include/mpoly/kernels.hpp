#pragma once

// Inner loops behind marginal() and apply_leg(). Every kernel exists twice:
// a straightforward serial reference and an OpenMP version. Each output
// element is owned by one thread and summed in the same order as the serial
// loop, so both produce bit-identical results.

#include <complex>
#include <cstddef>
#include <span>

namespace mpoly::kernels {

using cplx = std::complex<double>;

// Tensor viewed as (outer, dim, inner) around one leg.
struct LegView {
  std::size_t outer;
  std::size_t dim;
  std::size_t inner;
};

namespace serial {

// gram[a * dim + b] = sum_{p,q} x[p,a,q] * conj(x[p,b,q]).
void leg_gram(std::span<const cplx> x, LegView v, std::span<cplx> gram);

// y[p,r,q] = sum_a map[r * dim + a] * x[p,a,q], map is rows x dim.
void leg_apply(std::span<const cplx> x, LegView v, std::span<const cplx> map,
               std::size_t rows, std::span<cplx> y);

}  // namespace serial

namespace omp {

void leg_gram(std::span<const cplx> x, LegView v, std::span<cplx> gram);
void leg_apply(std::span<const cplx> x, LegView v, std::span<const cplx> map,
               std::size_t rows, std::span<cplx> y);

}  // namespace omp

// Below this many multiply-adds the OpenMP kernels run on one thread.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

}  // namespace mpoly::kernels
