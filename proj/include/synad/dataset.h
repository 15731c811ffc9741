#ifndef SYNAD_DATASET_H_
#define SYNAD_DATASET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synad/csv.h"
#include "synad/schema.h"
#include "synad/types.h"

namespace synad {

// Category used for empty categorical cells.
inline constexpr const char* kMissingCategory = "__missing__";

// Parsed but not yet encoded table. `columns[j]` holds feature column j of
// schema.feature_columns(); numeric cells use NaN for "missing".
struct RawColumn {
  std::vector<double> numeric;
  std::vector<std::string> categorical;
};

struct RawDataset {
  Schema schema;
  std::vector<RawColumn> columns;
  std::vector<ClassTag> tags;
  std::vector<std::string> subtypes;
  std::string source;

  std::size_t rows() const { return tags.size(); }
  std::size_t missing_numeric_cells() const;
};

enum class LoadMode {
  // Unknown categories are schema errors.
  kTraining,
  // Unknown categories are kept and later flagged out-of-domain.
  kInference,
};

// The header must name exactly the schema's columns (any order). Missing
// numeric cells ("", "NA", "NaN", "?") are stored as NaN. Rows without a
// subtype column get subtype "all"; normal rows get "normal".
RawDataset load_dataset(const std::string& path, const Schema& schema,
                        LoadMode mode = LoadMode::kTraining);
RawDataset parse_dataset(const CsvTable& table, const Schema& schema,
                         LoadMode mode, const std::string& source);

// Guesses a schema from CSV tables sharing one header: a column named
// `label_column` is the label, a column named "subtype" the subtype, every
// other column is a numeric feature when all of its non-missing cells parse
// as numbers and a categorical feature (sorted distinct values) otherwise.
// Throws SchemaError when the headers differ or the label column is absent.
Schema infer_schema(std::span<const CsvTable> tables,
                    const std::string& label_column = "label");

// Replaces missing numeric cells by the mean of the observed cells of the
// same column. Throws ImputationError for an all-missing column that has
// missing cells.
RawDataset mean_impute(RawDataset data);

// Concatenates two tables over the same schema.
RawDataset concat(const RawDataset& a, const RawDataset& b);

// Where each schema feature lands in the encoded vector.
struct FeatureLayout {
  struct Group {
    std::string name;
    int offset = 0;
    int size = 0;
  };
  struct Numeric {
    std::string name;
    int offset = 0;
  };

  std::vector<Numeric> numeric;
  std::vector<Group> groups;
  // Encoded slot per schema feature column, in schema order: index into
  // `numeric` (kind numeric) or `groups` (kind categorical).
  std::vector<std::pair<bool, int>> order;
  int width = 0;
};

// Encoded numeric table.
struct Dataset {
  Matrix features;
  std::vector<ClassTag> tags;
  std::vector<std::string> subtypes;
  FeatureLayout layout;
  std::string schema_hash;
  std::string source;
  std::uint64_t seed = 0;

  Eigen::Index rows() const { return features.rows(); }
  int dimension() const { return static_cast<int>(features.cols()); }
  std::size_t count(ClassTag tag) const;
  Dataset subset(std::span<const std::size_t> indices) const;
  // Rows carrying `tag`, as a dense matrix.
  Matrix rows_with(ClassTag tag) const;
};

Dataset concat(const Dataset& a, const Dataset& b);

// Builds an encoded dataset from numeric matrices already living in
// [0,1]^d (no categorical features).
Dataset make_numeric_dataset(const Matrix& normal, const Matrix& known,
                             const Matrix& synthetic);

// True iff a numeric slot lies outside [0, 1] or a one-hot group does not
// have exactly one active entry (an unseen category encodes as all zeros).
bool ood_flag(const FeatureLayout& layout, std::span<const double> row);

struct SplitResult {
  Dataset train;
  Dataset validation;
  std::vector<std::string> warnings;
};

// Stratified by class tag and deterministic per seed. Each stratum of size
// k >= 2 sends clamp(round(k * val_fraction), 1, k - 1) rows to validation;
// strata with fewer than 2 rows stay in train with a warning.
SplitResult split(const Dataset& data, double val_fraction, std::uint64_t seed);

}  // namespace synad

#endif  // SYNAD_DATASET_H_
