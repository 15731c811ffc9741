#ifndef SYNAD_NORMALIZER_H_
#define SYNAD_NORMALIZER_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "synad/dataset.h"

namespace synad {

// Min-max scaling for numeric columns and one-hot encoding for categorical
// columns, fitted on training rows only. Test rows may land outside [0, 1];
// ood_flag() then marks them.
class Normalizer {
 public:
  struct NumericStats {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;  // imputation value for missing cells
  };
  struct Vocabulary {
    std::string name;
    std::vector<std::string> categories;
  };

  // Numeric statistics skip missing cells. A categorical vocabulary is the
  // schema's category list, plus kMissingCategory when training rows have
  // empty cells.
  static Normalizer fit(const RawDataset& train);
  // Identity scaling on [0, 1] for numeric columns and the schema's
  // category lists; used to lay out synthetic rows without data.
  static Normalizer from_schema(const Schema& schema);

  // Missing numeric cells are imputed with the training mean. Constant
  // columns map the training constant to 0 and any other value outside
  // [0, 1].
  Dataset apply(const RawDataset& data) const;
  // Inverse map; constant columns return the constant and rows without an
  // active category decode to an empty string.
  RawDataset invert(const Dataset& data) const;

  const FeatureLayout& layout() const { return layout_; }
  const Schema& schema() const { return schema_; }
  const std::vector<NumericStats>& numeric_stats() const { return numeric_; }
  const std::vector<Vocabulary>& vocabularies() const { return vocab_; }

  nlohmann::json to_json() const;
  static Normalizer from_json(const nlohmann::json& doc);
  void save(const std::string& path) const;
  static Normalizer load(const std::string& path);

 private:
  void build_layout();

  Schema schema_;
  std::vector<NumericStats> numeric_;
  std::vector<Vocabulary> vocab_;
  FeatureLayout layout_;
};

}  // namespace synad

#endif  // SYNAD_NORMALIZER_H_
