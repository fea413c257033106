#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mpoly {

enum class ClaimStatus { pass, fail, evidence_only };

struct ClaimResult {
  std::string claim_id;
  std::string anchor;
  ClaimStatus status = ClaimStatus::fail;
  double metric = 0.0;
  double tolerance = 0.0;
  std::int64_t runtime_ms = 0;
  std::string detail;
};

struct ClaimInfo {
  std::string id;
  std::string anchor;
  bool evidence_only = false;
};

/// All registered claims, sorted by id.
std::vector<ClaimInfo> list_claims();

/// Runs every claim whose id matches the glob `filter` (all claims when
/// empty). Each claim gets its own seed derived from `seed` and the claim id.
/// Throws InvalidArgument if the filter matches no claim.
std::vector<ClaimResult> run_verify(const std::optional<std::string>& filter, std::uint64_t seed);

/// True iff no pass-class claim failed.
bool verify_ok(const std::vector<ClaimResult>& results);

std::uint64_t claim_seed(const std::string& claim_id, std::uint64_t seed);

const char* to_string(ClaimStatus s);
nlohmann::json to_json(const ClaimResult& r);
nlohmann::json to_json(const std::vector<ClaimResult>& rs);

}  // namespace mpoly
