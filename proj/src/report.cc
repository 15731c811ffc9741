#include "synad/report.h"

#include <fstream>

#include "synad/csv.h"
#include "synad/errors.h"

namespace synad {

void write_pr_curve_csv(std::ostream& out, const std::vector<PrPoint>& curve) {
  CsvWriter writer(out);
  writer.row({"threshold", "precision", "recall"});
  for (const auto& p : curve)
    writer.row({format_double(p.threshold), format_double(p.precision),
                format_double(p.recall)});
}

void write_subtype_pr_curves_csv(std::ostream& out, std::span<const double> scores,
                                 std::span<const int> labels,
                                 std::span<const std::string> subtypes) {
  CsvWriter writer(out);
  writer.row({"subtype", "threshold", "precision", "recall"});
  for (const auto& r : evaluate_subtypes(scores, labels, subtypes)) {
    std::vector<double> s;
    std::vector<int> l;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == 0 || subtypes[i] == r.subtype) {
        s.push_back(scores[i]);
        l.push_back(labels[i]);
      }
    }
    for (const auto& p : pr_curve(s, l))
      writer.row({r.subtype, format_double(p.threshold), format_double(p.precision),
                  format_double(p.recall)});
  }
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigurationError("failed writing '" + path + "'");
}

}  // namespace synad
