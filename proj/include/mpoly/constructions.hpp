#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpoly/tensor.hpp"

namespace mpoly {

/// Unit tensor <r>_k = sum_j e_j (x) ... (x) e_j with k legs.
Tensor unit_tensor(std::size_t r, std::size_t k = 3);

/// Matrix multiplication tensor sum_{i,j,k} e_{i,j} (x) e_{j,k} (x) e_{k,i}
/// in C^{n1 n2} (x) C^{n2 n3} (x) C^{n3 n1}; e_{i,j} is the row-major
/// flattening of the (i,j) matrix unit.
Tensor matmul_tensor(std::size_t n1, std::size_t n2, std::size_t n3);

/// Iterated matrix multiplication: sum over i in [n]^k of
/// e_{i1,i2} (x) e_{i2,i3} (x) ... (x) e_{ik,i1}.
Tensor imm_tensor(std::size_t n, std::size_t k);

/// Structure tensor of multiplying polynomials of degrees a-1 and b-1:
/// sum_{i,j} e_i (x) e_j (x) e_{i+j-1}, shape a x b x (a+b-1).
Tensor poly_mult_tensor(std::size_t a, std::size_t b);

/// The pencil poly_mult_tensor(2, c-1).
Tensor pencil_tensor(std::size_t c);

/// Pencil rescaled so every marginal is uniform:
/// slice 1 = [diag(sqrt(c-1), ..., sqrt(1)) | 0],
/// slice 2 = [0 | diag(sqrt(1), ..., sqrt(c-1))].
Tensor balanced_pencil(std::size_t c);

/// sum_{j,k} sqrt(q_j) zeta^{jk} e_j (x) e_k (x) e_k with zeta = exp(2 pi i / n)
/// and 1-based j, k. Its spectrum point is (q | u_n | u_n).
Tensor bci_tensor(std::vector<double> q);

/// e_1 ^ e_2 ^ e_3 in C^3 (x) C^3 (x) C^3.
Tensor wedge3();

Tensor zero_tensor(const Shape& shape);

/// Maps (A, B, C) with (A (x) B (x) C) <a+b-1> = P_{a,b}: A and B evaluate
/// at the (a+b-1)-th roots of unity, C interpolates back.
LinearMapTuple unit_to_poly_mult_maps(std::size_t a, std::size_t b);

/// Diagonal maps taking the pencil P_c to its balanced form.
LinearMapTuple pencil_balancing_maps(std::size_t c);

/// Maps e_{i,i} -> scale * e_1 and e_{i,j} -> 0 for i != j on C^{n^2}.
Matrix imm_diagonal_collapse_map(std::size_t n, double scale = 1.0);

/// The ab x ab matrix M with M((k,l),(i,j)) = S[i, j, (k,l)]; then
/// S = (I (x) I (x) M) M_{a,1,b}.
Matrix matmul_a1b_reconstruction_map(const Tensor& s);

/// Uniform probability vector of length n padded with zeros to `length`.
std::vector<double> uniform_vector(std::size_t n, std::size_t length = 0);

enum class ConstructionKind {
  unit, matmul, imm, polymul, pencil, balanced_pencil, bci, wedge3, zero
};

struct ConstructionSpec {
  ConstructionKind kind;
  std::vector<std::size_t> params;
  std::vector<double> q;
};

ConstructionKind parse_construction_kind(const std::string& name);
std::string to_string(ConstructionKind kind);

/// Dispatches on spec.kind, validating params.
Tensor construct(const ConstructionSpec& spec);

}  // namespace mpoly
