#ifndef SYNAD_CHECKPOINT_H_
#define SYNAD_CHECKPOINT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "synad/mlp.h"
#include "synad/normalizer.h"

namespace synad {

// Self-describing JSON model file: architecture, activation, output mapping,
// seed, schema hash, the fitted normalizer and every parameter (doubles are
// written in shortest round-trip form, so save/load is lossless).
struct Checkpoint {
  MLPClassifier model;
  std::optional<Normalizer> normalizer;
  std::string schema_hash;
  std::uint64_t seed = 0;
  nlohmann::json train_config;  // free-form record of how the model was made
};

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);
void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);
// Throws ParseError / SchemaError for malformed files.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace synad

#endif  // SYNAD_CHECKPOINT_H_
