#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cuspcert {

inline constexpr const char* kToolVersion = "0.1.0";

/// Auditable record of one tool invocation.  Re-running the same command on
/// the same inputs reproduces the results field (and its digest) exactly;
/// only the timestamp differs.
struct Certificate {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string inputs_digest;  // "fnv1a64:<hex>" over the raw input bytes
  nlohmann::json parameters;
  nlohmann::json results;
  std::vector<std::string> one_sidedness;
  std::string timestamp;  // ISO 8601 UTC; excluded from digests
};

std::string fnv1a64_hex(std::string_view bytes);

/// Digest of the input document at the given path.
std::string digest_file(const std::string& path);

/// Digest of the results field alone (canonical dump, no timestamp).
std::string results_digest(const Certificate& cert);

std::string iso8601_utc_now();

Certificate make_certificate(std::string command, nlohmann::json parameters,
                             nlohmann::json results,
                             std::vector<std::string> one_sidedness,
                             std::string inputs_digest);

nlohmann::json certificate_to_json(const Certificate& cert);

}  // namespace cuspcert
