#include "synad/schema.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "synad/errors.h"

namespace synad {

const char* to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::kNormal:
      return "normal";
    case ClassTag::kKnownAnomaly:
      return "known_anomaly";
    case ClassTag::kSyntheticAnomaly:
      return "synthetic_anomaly";
  }
  return "?";
}

ClassTag LabelConvention::classify(const std::string& label) const {
  if (std::find(normal.begin(), normal.end(), label) != normal.end())
    return ClassTag::kNormal;
  if (anomaly.empty() ||
      std::find(anomaly.begin(), anomaly.end(), label) != anomaly.end())
    return ClassTag::kKnownAnomaly;
  throw SchemaError("label '" + label + "' is neither normal nor anomaly");
}

Schema::Schema(std::vector<ColumnSpec> columns, LabelConvention convention)
    : columns_(std::move(columns)), convention_(std::move(convention)) {
  validate();
}

namespace {

ColumnKind parse_kind(const std::string& text) {
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "categorical") return ColumnKind::kCategorical;
  throw SchemaError("unknown column kind '" + text + "'");
}

ColumnRole parse_role(const std::string& text) {
  if (text == "feature") return ColumnRole::kFeature;
  if (text == "label") return ColumnRole::kLabel;
  if (text == "subtype") return ColumnRole::kSubtype;
  if (text == "ignore") return ColumnRole::kIgnore;
  throw SchemaError("unknown column role '" + text + "'");
}

const char* kind_name(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

const char* role_name(ColumnRole role) {
  switch (role) {
    case ColumnRole::kFeature:
      return "feature";
    case ColumnRole::kLabel:
      return "label";
    case ColumnRole::kSubtype:
      return "subtype";
    case ColumnRole::kIgnore:
      return "ignore";
  }
  return "?";
}

}  // namespace

Schema Schema::from_json(const nlohmann::json& doc) {
  try {
    std::vector<ColumnSpec> columns;
    for (const auto& col : doc.at("columns")) {
      ColumnSpec spec;
      spec.name = col.at("name").get<std::string>();
      spec.kind = parse_kind(col.value("kind", std::string("numeric")));
      spec.role = parse_role(col.value("role", std::string("feature")));
      if (col.contains("categories"))
        spec.categories = col.at("categories").get<std::vector<std::string>>();
      columns.push_back(std::move(spec));
    }
    LabelConvention convention;
    if (doc.contains("label_convention")) {
      const auto& lc = doc.at("label_convention");
      if (lc.contains("normal"))
        convention.normal = lc.at("normal").get<std::vector<std::string>>();
      if (lc.contains("anomaly"))
        convention.anomaly = lc.at("anomaly").get<std::vector<std::string>>();
    }
    if (convention.normal.empty()) convention.normal = {"normal"};
    return Schema(std::move(columns), std::move(convention));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed schema JSON: ") + e.what());
  }
}

Schema Schema::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open schema '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("schema is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

nlohmann::json Schema::to_json() const {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : columns_) {
    nlohmann::json col = {{"name", c.name},
                          {"kind", kind_name(c.kind)},
                          {"role", role_name(c.role)}};
    if (!c.categories.empty()) col["categories"] = c.categories;
    cols.push_back(std::move(col));
  }
  return {{"columns", cols},
          {"label_convention",
           {{"normal", convention_.normal}, {"anomaly", convention_.anomaly}}}};
}

void Schema::validate() const {
  std::set<std::string> names;
  int labels = 0;
  int subtypes = 0;
  int features = 0;
  for (const auto& c : columns_) {
    if (c.name.empty()) throw SchemaError("column names must be non-empty");
    if (!names.insert(c.name).second)
      throw SchemaError("duplicate column '" + c.name + "'");
    if (c.role == ColumnRole::kLabel) ++labels;
    if (c.role == ColumnRole::kSubtype) ++subtypes;
    if (c.role == ColumnRole::kFeature) {
      ++features;
      if (c.kind == ColumnKind::kCategorical) {
        if (c.categories.empty())
          throw SchemaError("categorical column '" + c.name +
                            "' needs a category list");
        std::set<std::string> cats(c.categories.begin(), c.categories.end());
        if (cats.size() != c.categories.size())
          throw SchemaError("duplicate category in column '" + c.name + "'");
      }
    }
  }
  if (labels != 1) throw SchemaError("schema needs exactly one label column");
  if (subtypes > 1) throw SchemaError("schema allows at most one subtype column");
  if (features == 0) throw SchemaError("schema needs at least one feature");
}

std::vector<std::size_t> Schema::feature_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::kFeature) out.push_back(i);
  return out;
}

std::size_t Schema::label_column() const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::kLabel) return i;
  throw SchemaError("schema has no label column");
}

std::optional<std::size_t> Schema::subtype_column() const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::kSubtype) return i;
  return std::nullopt;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Schema::hash() const { return fnv1a_hex(to_json().dump()); }

}  // namespace synad
