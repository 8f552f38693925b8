#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace evotopic::csv {

/// One parsed CSV row together with the physical line it started on.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: comma separated, double-quote quoting with
/// doubled quotes as escape, quoted fields may span lines.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next row, or nullopt at end of input. Throws InputError on an
  /// unterminated quoted field.
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quote a field when it contains a separator, quote, or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace evotopic::csv
