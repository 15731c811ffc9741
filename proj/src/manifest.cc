#include "synad/manifest.h"

#include <cstdlib>
#include <filesystem>

#include "synad/errors.h"
#include "synad/report.h"
#include "synad/schema.h"

namespace synad {

std::string default_output_root() {
  const char* env = std::getenv(kOutputRootEnv);
  return env != nullptr && *env != '\0' ? std::string(env) : std::string("runs");
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ConfigurationError("cannot create directory '" + dir + "'");
}

std::string config_hash(const nlohmann::json& config) { return fnv1a_hex(config.dump()); }

std::string write_manifest(const std::string& dir, const std::string& command,
                           const nlohmann::json& config, const nlohmann::json& outputs) {
  ensure_directory(dir);
  const std::string hash = config_hash(config);
  nlohmann::ordered_json doc;
  doc["tool"] = "synad";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config_hash"] = hash;
  doc["config"] = config;
  doc["outputs"] = outputs;
  write_json_file((std::filesystem::path(dir) / "manifest.json").string(),
                  nlohmann::json(doc));
  return hash;
}

}  // namespace synad
