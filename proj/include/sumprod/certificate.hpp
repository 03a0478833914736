#pragma once

// JSON form of a decomposition certificate and an independent re-checker.
// The schema is described in docs/certificate.md.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumprod/decomposition.hpp"

namespace sumprod {

inline constexpr const char* kCertificateFormat = "sumprod.decomposition-certificate";
inline constexpr int kCertificateVersion = 1;

nlohmann::json to_json(const DecompositionCertificate& cert);

struct CheckReport {
  bool consistent = true;  ///< every recorded value matches the recomputation
  bool valid = false;      ///< every recomputed inequality holds
  std::uint64_t lower_bound = 0;
  std::vector<std::string> problems;

  bool ok() const noexcept { return consistent && valid; }
};

/// Re-derives every set, size and inequality of the certificate from the
/// recorded inputs using naive quadratic set arithmetic, and compares them
/// with what was recorded. Never throws on malformed documents; those are
/// reported as problems.
CheckReport check_certificate(const nlohmann::json& doc);

}  // namespace sumprod
