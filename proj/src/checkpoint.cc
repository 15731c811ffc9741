#include "synad/checkpoint.h"

#include <fstream>

#include "synad/errors.h"

namespace synad {

namespace {
constexpr const char* kFormat = "synad-checkpoint";
constexpr int kVersion = 1;
}  // namespace

nlohmann::json checkpoint_to_json(const Checkpoint& c) {
  nlohmann::ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["dims"] = c.model.dims();
  doc["activation"] = c.model.hidden_activation().to_string();
  doc["output_mapping"] = to_string(c.model.output_mapping());
  doc["output_sign"] = c.model.output_sign().to_string();
  doc["seed"] = c.seed;
  doc["schema_hash"] = c.schema_hash;
  doc["train_config"] = c.train_config;
  if (c.normalizer) doc["normalizer"] = c.normalizer->to_json();
  const Vector theta = c.model.parameters();
  doc["parameters"] = std::vector<double>(theta.data(), theta.data() + theta.size());
  return nlohmann::json(doc);
}

Checkpoint checkpoint_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat)
      throw SchemaError("not a checkpoint file");
    if (doc.at("version").get<int>() != kVersion)
      throw SchemaError("unsupported checkpoint version");
    MLPClassifier model(doc.at("dims").get<std::vector<int>>(),
                        ActivationSpec::parse(doc.at("activation").get<std::string>()),
                        parse_output_mapping(doc.at("output_mapping").get<std::string>()),
                        ActivationSpec::parse(doc.at("output_sign").get<std::string>()));
    const auto params = doc.at("parameters").get<std::vector<double>>();
    model.set_parameters(Eigen::Map<const Vector>(params.data(),
                                                  static_cast<Eigen::Index>(params.size())));
    Checkpoint c{std::move(model), std::nullopt, doc.at("schema_hash").get<std::string>(),
                 doc.at("seed").get<std::uint64_t>(), doc.value("train_config", nlohmann::json())};
    if (doc.contains("normalizer")) c.normalizer = Normalizer::from_json(doc.at("normalizer"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot write checkpoint '" + path + "'");
  out << checkpoint_to_json(checkpoint).dump(1) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open checkpoint '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("checkpoint is not valid JSON: ") + e.what(), 0);
  }
  return checkpoint_from_json(doc);
}

}  // namespace synad
