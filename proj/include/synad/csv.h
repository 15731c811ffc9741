#ifndef SYNAD_CSV_H_
#define SYNAD_CSV_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synad {

// Header row plus string cells, comma separated, RFC 4180 quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws ParseError (with 1-based data-row index) on ragged rows or
// unterminated quotes.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// Strict full-string parse; empty or malformed text gives nullopt.
std::optional<double> parse_double(std::string_view text);

std::string csv_escape(std::string_view cell);
// Shortest text that round-trips the double exactly.
std::string format_double(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace synad

#endif  // SYNAD_CSV_H_
