#include "synad/dataset.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "synad/errors.h"
#include "synad/rng.h"

namespace synad {

namespace {

bool is_missing_token(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" ||
         cell == "?";
}

}  // namespace

std::size_t RawDataset::missing_numeric_cells() const {
  std::size_t count = 0;
  for (const auto& col : columns)
    for (double v : col.numeric)
      if (std::isnan(v)) ++count;
  return count;
}

RawDataset parse_dataset(const CsvTable& table, const Schema& schema,
                         LoadMode mode, const std::string& source) {
  schema.validate();
  const auto& cols = schema.columns();
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    position[table.header[i]] = i;
  if (position.size() != table.header.size())
    throw ParseError("duplicate header name", 0);
  if (table.header.size() != cols.size())
    throw ParseError("header has " + std::to_string(table.header.size()) +
                         " columns, schema has " + std::to_string(cols.size()),
                     0);
  std::vector<std::size_t> csv_index(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto it = position.find(cols[i].name);
    if (it == position.end())
      throw ParseError("header is missing schema column '" + cols[i].name + "'",
                       0);
    csv_index[i] = it->second;
  }

  const auto features = schema.feature_columns();
  const std::size_t label_col = schema.label_column();
  const auto subtype_col = schema.subtype_column();

  RawDataset out;
  out.schema = schema;
  out.source = source;
  out.columns.resize(features.size());
  std::vector<std::set<std::string>> known(features.size());
  for (std::size_t j = 0; j < features.size(); ++j)
    known[j] = std::set<std::string>(cols[features[j]].categories.begin(),
                                     cols[features[j]].categories.end());

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_number = r + 1;
    for (std::size_t j = 0; j < features.size(); ++j) {
      const auto& spec = cols[features[j]];
      const std::string& cell = row[csv_index[features[j]]];
      if (spec.kind == ColumnKind::kNumeric) {
        if (is_missing_token(cell)) {
          out.columns[j].numeric.push_back(
              std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        const auto value = parse_double(cell);
        if (!value || !std::isfinite(*value))
          throw ParseError("column '" + spec.name + "': cannot parse '" + cell +
                               "' as a number",
                           row_number);
        out.columns[j].numeric.push_back(*value);
      } else {
        if (cell.empty()) {
          out.columns[j].categorical.emplace_back(kMissingCategory);
          continue;
        }
        if (mode == LoadMode::kTraining && !known[j].count(cell))
          throw SchemaError("row " + std::to_string(row_number) +
                            ": unknown category '" + cell + "' in column '" +
                            spec.name + "'");
        out.columns[j].categorical.push_back(cell);
      }
    }
    const std::string& label = row[csv_index[label_col]];
    if (label.empty()) throw ParseError("empty label", row_number);
    ClassTag tag;
    try {
      tag = schema.label_convention().classify(label);
    } catch (const SchemaError& e) {
      throw ParseError(e.what(), row_number);
    }
    out.tags.push_back(tag);
    if (tag == ClassTag::kNormal) {
      out.subtypes.emplace_back("normal");
    } else if (subtype_col) {
      const std::string& sub = row[csv_index[*subtype_col]];
      out.subtypes.push_back(sub.empty() ? "all" : sub);
    } else {
      out.subtypes.emplace_back("all");
    }
  }
  return out;
}

RawDataset load_dataset(const std::string& path, const Schema& schema,
                        LoadMode mode) {
  return parse_dataset(read_csv_file(path), schema, mode, path);
}

Schema infer_schema(std::span<const CsvTable> tables, const std::string& label_column) {
  if (tables.empty()) throw SchemaError("no tables to infer a schema from");
  const auto& header = tables.front().header;
  for (const auto& t : tables) {
    auto a = t.header, b = header;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw SchemaError("input files have different columns");
  }
  if (std::find(header.begin(), header.end(), label_column) == header.end())
    throw SchemaError("no '" + label_column + "' column to infer labels from");
  std::vector<ColumnSpec> columns;
  for (const auto& name : header) {
    ColumnSpec spec;
    spec.name = name;
    if (name == label_column) {
      spec.role = ColumnRole::kLabel;
      spec.kind = ColumnKind::kCategorical;
      columns.push_back(spec);
      continue;
    }
    if (name == "subtype") {
      spec.role = ColumnRole::kSubtype;
      spec.kind = ColumnKind::kCategorical;
      columns.push_back(spec);
      continue;
    }
    std::set<std::string> values;
    bool numeric = true;
    for (const auto& t : tables) {
      const auto col = static_cast<std::size_t>(
          std::find(t.header.begin(), t.header.end(), name) - t.header.begin());
      for (const auto& row : t.rows) {
        const std::string& cell = row[col];
        if (is_missing_token(cell)) continue;
        values.insert(cell);
        if (numeric && !parse_double(cell)) numeric = false;
      }
    }
    if (!numeric) {
      spec.kind = ColumnKind::kCategorical;
      spec.categories.assign(values.begin(), values.end());
    }
    columns.push_back(spec);
  }
  LabelConvention convention;
  convention.normal = {"normal"};
  Schema schema(std::move(columns), convention);
  schema.validate();
  return schema;
}

RawDataset mean_impute(RawDataset data) {
  for (std::size_t j = 0; j < data.columns.size(); ++j) {
    auto& values = data.columns[j].numeric;
    double sum = 0.0;
    std::size_t observed = 0;
    bool any_missing = false;
    for (double v : values) {
      if (std::isnan(v)) {
        any_missing = true;
      } else {
        sum += v;
        ++observed;
      }
    }
    if (!any_missing) continue;
    if (observed == 0)
      throw ImputationError("feature column " + std::to_string(j) +
                            " has no observed values to impute from");
    const double mean = sum / static_cast<double>(observed);
    for (double& v : values)
      if (std::isnan(v)) v = mean;
  }
  return data;
}

RawDataset concat(const RawDataset& a, const RawDataset& b) {
  if (a.schema.hash() != b.schema.hash())
    throw SchemaError("cannot concatenate datasets with different schemas");
  RawDataset out = a;
  for (std::size_t j = 0; j < out.columns.size(); ++j) {
    auto& num = out.columns[j].numeric;
    num.insert(num.end(), b.columns[j].numeric.begin(), b.columns[j].numeric.end());
    auto& cat = out.columns[j].categorical;
    cat.insert(cat.end(), b.columns[j].categorical.begin(),
               b.columns[j].categorical.end());
  }
  out.tags.insert(out.tags.end(), b.tags.begin(), b.tags.end());
  out.subtypes.insert(out.subtypes.end(), b.subtypes.begin(), b.subtypes.end());
  out.source = a.source + ";" + b.source;
  return out;
}

std::size_t Dataset::count(ClassTag tag) const {
  return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), tag));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.layout = layout;
  out.schema_hash = schema_hash;
  out.source = source;
  out.seed = seed;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.tags.reserve(indices.size());
  out.subtypes.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) =
        features.row(static_cast<Eigen::Index>(indices[i]));
    out.tags.push_back(tags[indices[i]]);
    out.subtypes.push_back(subtypes[indices[i]]);
  }
  return out;
}

Matrix Dataset::rows_with(ClassTag tag) const {
  Matrix out(static_cast<Eigen::Index>(count(tag)), features.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < features.rows(); ++i)
    if (tags[static_cast<std::size_t>(i)] == tag) out.row(k++) = features.row(i);
  return out;
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.features.cols() != b.features.cols())
    throw ShapeError("cannot concatenate datasets of different widths");
  Dataset out = a;
  out.features.resize(a.rows() + b.rows(), a.features.cols());
  out.features.topRows(a.rows()) = a.features;
  out.features.bottomRows(b.rows()) = b.features;
  out.tags.insert(out.tags.end(), b.tags.begin(), b.tags.end());
  out.subtypes.insert(out.subtypes.end(), b.subtypes.begin(), b.subtypes.end());
  return out;
}

Dataset make_numeric_dataset(const Matrix& normal, const Matrix& known,
                             const Matrix& synthetic) {
  const Eigen::Index d =
      std::max({normal.cols(), known.cols(), synthetic.cols()});
  for (const Matrix* m : {&normal, &known, &synthetic})
    if (m->rows() > 0 && m->cols() != d)
      throw ShapeError("feature matrices disagree on dimension");
  Dataset out;
  for (Eigen::Index j = 0; j < d; ++j)
    out.layout.numeric.push_back({"x" + std::to_string(j + 1), static_cast<int>(j)});
  for (Eigen::Index j = 0; j < d; ++j)
    out.layout.order.emplace_back(true, static_cast<int>(j));
  out.layout.width = static_cast<int>(d);
  out.features.resize(normal.rows() + known.rows() + synthetic.rows(), d);
  Eigen::Index r = 0;
  auto append = [&](const Matrix& m, ClassTag tag, const char* subtype) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out.features.row(r++) = m.row(i);
      out.tags.push_back(tag);
      out.subtypes.emplace_back(subtype);
    }
  };
  append(normal, ClassTag::kNormal, "normal");
  append(known, ClassTag::kKnownAnomaly, "known");
  append(synthetic, ClassTag::kSyntheticAnomaly, "synthetic");
  return out;
}

bool ood_flag(const FeatureLayout& layout, std::span<const double> row) {
  if (static_cast<int>(row.size()) != layout.width)
    throw ShapeError("row width does not match the feature layout");
  for (const auto& num : layout.numeric) {
    const double v = row[static_cast<std::size_t>(num.offset)];
    if (!(v >= 0.0 && v <= 1.0)) return true;
  }
  for (const auto& group : layout.groups) {
    int active = 0;
    for (int k = 0; k < group.size; ++k) {
      const double v = row[static_cast<std::size_t>(group.offset + k)];
      if (v == 1.0)
        ++active;
      else if (v != 0.0)
        return true;
    }
    if (active != 1) return true;
  }
  return false;
}

SplitResult split(const Dataset& data, double val_fraction, std::uint64_t seed) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    throw InvalidParameterError("validation fraction must be in (0, 1)");
  if (data.rows() == 0) throw InvalidParameterError("cannot split an empty dataset");
  SplitResult result;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  for (ClassTag tag : {ClassTag::kNormal, ClassTag::kKnownAnomaly,
                       ClassTag::kSyntheticAnomaly}) {
    std::vector<std::size_t> stratum;
    for (std::size_t i = 0; i < data.tags.size(); ++i)
      if (data.tags[i] == tag) stratum.push_back(i);
    if (stratum.empty()) continue;
    if (stratum.size() < 2) {
      result.warnings.push_back(std::string("stratum '") + to_string(tag) +
                                "' has fewer than 2 rows; kept in train");
      train_idx.insert(train_idx.end(), stratum.begin(), stratum.end());
      continue;
    }
    Rng rng(seed, static_cast<std::uint64_t>(tag) + 1);
    rng.shuffle(std::span<std::size_t>(stratum));
    const auto k = static_cast<long long>(stratum.size());
    long long n_val = std::llround(static_cast<double>(k) * val_fraction);
    n_val = std::clamp(n_val, 1LL, k - 1);
    val_idx.insert(val_idx.end(), stratum.begin(), stratum.begin() + n_val);
    train_idx.insert(train_idx.end(), stratum.begin() + n_val, stratum.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  result.train = data.subset(train_idx);
  result.validation = data.subset(val_idx);
  return result;
}

}  // namespace synad
