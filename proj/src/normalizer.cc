#include "synad/normalizer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "synad/errors.h"

namespace synad {

Normalizer Normalizer::fit(const RawDataset& train) {
  if (train.rows() == 0) throw InvalidParameterError("cannot fit on zero rows");
  Normalizer out;
  out.schema_ = train.schema;
  const auto& cols = train.schema.columns();
  const auto features = train.schema.feature_columns();
  for (std::size_t j = 0; j < features.size(); ++j) {
    const auto& spec = cols[features[j]];
    if (spec.kind == ColumnKind::kNumeric) {
      NumericStats stats;
      stats.name = spec.name;
      stats.min = std::numeric_limits<double>::infinity();
      stats.max = -std::numeric_limits<double>::infinity();
      double sum = 0.0;
      std::size_t observed = 0;
      for (double v : train.columns[j].numeric) {
        if (std::isnan(v)) continue;
        stats.min = std::min(stats.min, v);
        stats.max = std::max(stats.max, v);
        sum += v;
        ++observed;
      }
      if (observed == 0)
        throw ImputationError("numeric column '" + spec.name +
                              "' has no observed training values");
      stats.mean = sum / static_cast<double>(observed);
      out.numeric_.push_back(stats);
    } else {
      Vocabulary vocab{spec.name, spec.categories};
      const auto& cells = train.columns[j].categorical;
      if (std::find(cells.begin(), cells.end(), kMissingCategory) != cells.end())
        vocab.categories.emplace_back(kMissingCategory);
      out.vocab_.push_back(std::move(vocab));
    }
  }
  out.build_layout();
  return out;
}

Normalizer Normalizer::from_schema(const Schema& schema) {
  schema.validate();
  Normalizer out;
  out.schema_ = schema;
  const auto& cols = schema.columns();
  for (std::size_t idx : schema.feature_columns()) {
    const auto& spec = cols[idx];
    if (spec.kind == ColumnKind::kNumeric) {
      out.numeric_.push_back({spec.name, 0.0, 1.0, 0.5});
    } else {
      out.vocab_.push_back({spec.name, spec.categories});
    }
  }
  out.build_layout();
  return out;
}

void Normalizer::build_layout() {
  layout_ = FeatureLayout{};
  const auto& cols = schema_.columns();
  int offset = 0;
  std::size_t num_i = 0;
  std::size_t cat_i = 0;
  for (std::size_t idx : schema_.feature_columns()) {
    if (cols[idx].kind == ColumnKind::kNumeric) {
      layout_.order.emplace_back(true, static_cast<int>(layout_.numeric.size()));
      layout_.numeric.push_back({numeric_.at(num_i++).name, offset});
      offset += 1;
    } else {
      const auto& vocab = vocab_.at(cat_i++);
      const int size = static_cast<int>(vocab.categories.size());
      layout_.order.emplace_back(false, static_cast<int>(layout_.groups.size()));
      layout_.groups.push_back({vocab.name, offset, size});
      offset += size;
    }
  }
  layout_.width = offset;
}

Dataset Normalizer::apply(const RawDataset& data) const {
  if (data.schema.hash() != schema_.hash())
    throw SchemaError("dataset schema differs from the fitted schema");
  Dataset out;
  out.layout = layout_;
  out.schema_hash = schema_.hash();
  out.source = data.source;
  out.tags = data.tags;
  out.subtypes = data.subtypes;
  const auto n = static_cast<Eigen::Index>(data.rows());
  out.features = Matrix::Zero(n, layout_.width);
  for (std::size_t j = 0; j < layout_.order.size(); ++j) {
    const auto [is_numeric, slot] = layout_.order[j];
    if (is_numeric) {
      const auto& stats = numeric_[static_cast<std::size_t>(slot)];
      const int col = layout_.numeric[static_cast<std::size_t>(slot)].offset;
      const double range = stats.max - stats.min;
      for (Eigen::Index i = 0; i < n; ++i) {
        double v = data.columns[j].numeric[static_cast<std::size_t>(i)];
        if (std::isnan(v)) v = stats.mean;
        double scaled;
        if (range > 0.0)
          scaled = (v - stats.min) / range;
        else
          scaled = v == stats.min ? 0.0 : (v < stats.min ? -1.0 : 2.0);
        out.features(i, col) = scaled;
      }
    } else {
      const auto& vocab = vocab_[static_cast<std::size_t>(slot)];
      const auto& group = layout_.groups[static_cast<std::size_t>(slot)];
      for (Eigen::Index i = 0; i < n; ++i) {
        const std::string& cell = data.columns[j].categorical[static_cast<std::size_t>(i)];
        auto it = std::find(vocab.categories.begin(), vocab.categories.end(), cell);
        if (it != vocab.categories.end())
          out.features(i, group.offset + static_cast<int>(it - vocab.categories.begin())) = 1.0;
      }
    }
  }
  return out;
}

RawDataset Normalizer::invert(const Dataset& data) const {
  if (data.features.cols() != layout_.width)
    throw ShapeError("dataset width does not match the normalizer layout");
  RawDataset out;
  out.schema = schema_;
  out.source = data.source;
  out.tags = data.tags;
  out.subtypes = data.subtypes;
  out.columns.resize(layout_.order.size());
  const Eigen::Index n = data.rows();
  for (std::size_t j = 0; j < layout_.order.size(); ++j) {
    const auto [is_numeric, slot] = layout_.order[j];
    if (is_numeric) {
      const auto& stats = numeric_[static_cast<std::size_t>(slot)];
      const int col = layout_.numeric[static_cast<std::size_t>(slot)].offset;
      const double range = stats.max - stats.min;
      for (Eigen::Index i = 0; i < n; ++i)
        out.columns[j].numeric.push_back(
            range > 0.0 ? stats.min + data.features(i, col) * range : stats.min);
    } else {
      const auto& vocab = vocab_[static_cast<std::size_t>(slot)];
      const auto& group = layout_.groups[static_cast<std::size_t>(slot)];
      for (Eigen::Index i = 0; i < n; ++i) {
        std::string value;
        for (int k = 0; k < group.size; ++k)
          if (data.features(i, group.offset + k) == 1.0)
            value = vocab.categories[static_cast<std::size_t>(k)];
        out.columns[j].categorical.push_back(std::move(value));
      }
    }
  }
  return out;
}

nlohmann::json Normalizer::to_json() const {
  nlohmann::json numeric = nlohmann::json::array();
  for (const auto& s : numeric_)
    numeric.push_back(
        {{"name", s.name}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}});
  nlohmann::json vocab = nlohmann::json::array();
  for (const auto& v : vocab_)
    vocab.push_back({{"name", v.name}, {"categories", v.categories}});
  return {{"schema", schema_.to_json()},
          {"schema_hash", schema_.hash()},
          {"numeric", numeric},
          {"categorical", vocab}};
}

Normalizer Normalizer::from_json(const nlohmann::json& doc) {
  try {
    Normalizer out;
    out.schema_ = Schema::from_json(doc.at("schema"));
    for (const auto& s : doc.at("numeric"))
      out.numeric_.push_back({s.at("name").get<std::string>(), s.at("min").get<double>(),
                              s.at("max").get<double>(), s.at("mean").get<double>()});
    for (const auto& v : doc.at("categorical"))
      out.vocab_.push_back({v.at("name").get<std::string>(),
                            v.at("categories").get<std::vector<std::string>>()});
    out.build_layout();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed normalizer JSON: ") + e.what());
  }
}

void Normalizer::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidParameterError("cannot write '" + path + "'");
  out << to_json().dump(2) << '\n';
}

Normalizer Normalizer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open normalizer '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("normalizer is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

}  // namespace synad
