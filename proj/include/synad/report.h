#ifndef SYNAD_REPORT_H_
#define SYNAD_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "synad/aupr.h"

namespace synad {

// Columns: threshold, precision, recall.
void write_pr_curve_csv(std::ostream& out, const std::vector<PrPoint>& curve);
// Columns: subtype, threshold, precision, recall (one curve per subtype).
void write_subtype_pr_curves_csv(std::ostream& out, std::span<const double> scores,
                                 std::span<const int> labels,
                                 std::span<const std::string> subtypes);

// Pretty-printed JSON followed by a newline; throws ConfigurationError when
// the file cannot be written.
void write_json_file(const std::string& path, const nlohmann::json& doc);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace synad

#endif  // SYNAD_REPORT_H_
