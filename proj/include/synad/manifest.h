#ifndef SYNAD_MANIFEST_H_
#define SYNAD_MANIFEST_H_

#include <string>

#include "json.hpp"

namespace synad {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputRootEnv = "SYNAD_OUTPUT_ROOT";

// $SYNAD_OUTPUT_ROOT when set and non-empty, "runs" otherwise.
std::string default_output_root();

// Creates `dir` (and parents) when missing; throws ConfigurationError on
// failure.
void ensure_directory(const std::string& dir);

// FNV-1a hash of the compact serialization of `config`.
std::string config_hash(const nlohmann::json& config);

// Writes <dir>/manifest.json holding the command, the full configuration
// (enough to replay the run), its hash, and the tool version. Returns the
// config hash.
std::string write_manifest(const std::string& dir, const std::string& command,
                           const nlohmann::json& config,
                           const nlohmann::json& outputs = nlohmann::json::object());

}  // namespace synad

#endif  // SYNAD_MANIFEST_H_
