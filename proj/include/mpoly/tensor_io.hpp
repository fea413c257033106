#pragma once

#include <iosfwd>

#include <json.hpp>

#include "mpoly/tensor.hpp"

namespace mpoly {

// Sparse interchange format:
//   {"dims": [d1, ..., dk],
//    "entries": [{"idx": [i1, ..., ik], "re": x, "im": y}, ...]}
// Indices are 1-based, omitted entries are zero. The writer emits the nonzero
// entries in lexicographic index order; the reader rejects out-of-range and
// duplicate indices.
nlohmann::json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j);

void write_tensor(std::ostream& os, const Tensor& t);
Tensor read_tensor(std::istream& is);

// {"blocks": [[...], [...], ...]}; a bare array of blocks is also accepted.
nlohmann::json point_to_json(const SpectrumPoint& p);
SpectrumPoint point_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace mpoly
