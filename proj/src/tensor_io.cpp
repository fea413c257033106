#include "mpoly/tensor_io.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>

namespace mpoly {

using nlohmann::json;

namespace {

std::size_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 1) throw ParseError(std::string(what) + " must be >= 1");
  return static_cast<std::size_t>(x);
}

double as_double(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

json tensor_to_json(const Tensor& t) {
  json entries = json::array();
  for (std::size_t off = 0; off < t.size(); ++off) {
    const cplx x = t.data()[off];
    if (x == cplx{}) continue;
    auto idx = t.unravel(off);
    for (auto& i : idx) ++i;
    entries.push_back({{"idx", idx}, {"re", x.real()}, {"im", x.imag()}});
  }
  return {{"dims", t.shape().dims()}, {"entries", entries}};
}

Tensor tensor_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("tensor JSON must be an object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw ParseError("tensor JSON needs a \"dims\" array");
  std::vector<std::size_t> dims;
  for (const auto& d : j["dims"]) dims.push_back(as_index(d, "dimension"));
  if (dims.size() < 2) throw ParseError("tensor order must be at least 2");
  Tensor t{Shape(dims)};
  if (!j.contains("entries")) return t;
  if (!j["entries"].is_array()) throw ParseError("\"entries\" must be an array");
  std::set<std::size_t> seen;
  std::vector<std::size_t> idx(dims.size());
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("idx") || !e["idx"].is_array())
      throw ParseError("entry needs an \"idx\" array");
    if (e["idx"].size() != dims.size()) throw ParseError("entry index arity does not match dims");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const auto v = as_index(e["idx"][i], "index");
      if (v > dims[i]) throw ParseError("entry index out of range");
      idx[i] = v - 1;
    }
    if (!e.contains("re")) throw ParseError("entry needs \"re\"");
    const double re = as_double(e["re"], "re");
    const double im = e.contains("im") ? as_double(e["im"], "im") : 0.0;
    const auto off = t.offset(idx);
    if (!seen.insert(off).second) throw ParseError("duplicate entry index");
    t.data()[off] = cplx{re, im};
  }
  return t;
}

void write_tensor(std::ostream& os, const Tensor& t) { os << tensor_to_json(t).dump() << '\n'; }

Tensor read_tensor(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return tensor_from_json(j);
}

json point_to_json(const SpectrumPoint& p) { return {{"blocks", p.blocks}}; }

SpectrumPoint point_from_json(const json& j) {
  const json* blocks = &j;
  if (j.is_object()) {
    if (!j.contains("blocks")) throw ParseError("point JSON needs \"blocks\"");
    blocks = &j["blocks"];
  }
  if (!blocks->is_array()) throw ParseError("point blocks must be an array");
  SpectrumPoint p;
  for (const auto& b : *blocks) {
    if (!b.is_array()) throw ParseError("each point block must be an array");
    std::vector<double> v;
    for (const auto& x : b) v.push_back(as_double(x, "point entry"));
    p.blocks.push_back(std::move(v));
  }
  return p;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mpoly
