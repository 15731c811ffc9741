#ifndef SYNAD_SCHEMA_H_
#define SYNAD_SCHEMA_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace synad {

enum class ClassTag { kNormal, kKnownAnomaly, kSyntheticAnomaly };

const char* to_string(ClassTag tag);

enum class ColumnKind { kNumeric, kCategorical };
// kSubtype names an optional per-row anomaly subtype (e.g. attack family);
// kIgnore columns are parsed but dropped.
enum class ColumnRole { kFeature, kLabel, kSubtype, kIgnore };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<std::string> categories;
  ColumnRole role = ColumnRole::kFeature;
};

// Which label values mean "normal". When `anomaly` is non-empty, a label
// outside both lists is a SchemaError; otherwise every non-normal label is an
// anomaly.
struct LabelConvention {
  std::vector<std::string> normal;
  std::vector<std::string> anomaly;

  ClassTag classify(const std::string& label) const;
};

// JSON form:
//   {"columns": [{"name": ..., "kind": "numeric"|"categorical",
//                 "categories": [...], "role": "feature"|"label"|...}],
//    "label_convention": {"normal": [...], "anomaly": [...]}}
class Schema {
 public:
  Schema() = default;
  Schema(std::vector<ColumnSpec> columns, LabelConvention convention);

  static Schema from_json(const nlohmann::json& doc);
  static Schema load(const std::string& path);
  nlohmann::json to_json() const;

  // Throws SchemaError when an invariant fails: exactly one label column,
  // unique column names, non-empty duplicate-free category lists for
  // categorical features, at least one feature.
  void validate() const;

  const std::vector<ColumnSpec>& columns() const { return columns_; }
  const LabelConvention& label_convention() const { return convention_; }
  // Indices into columns() of the feature columns, in schema order.
  std::vector<std::size_t> feature_columns() const;
  std::size_t label_column() const;
  std::optional<std::size_t> subtype_column() const;

  // FNV-1a over the canonical JSON dump, as 16 hex digits.
  std::string hash() const;

 private:
  std::vector<ColumnSpec> columns_;
  LabelConvention convention_;
};

// Stable 64-bit FNV-1a digest in hex.
std::string fnv1a_hex(const std::string& text);

}  // namespace synad

#endif  // SYNAD_SCHEMA_H_
