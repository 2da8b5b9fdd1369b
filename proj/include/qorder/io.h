#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qorder::io {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double v);
/// Inverse of format_double; throws Error(DomainError) on trailing garbage.
double parse_double(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string csv_escape(std::string_view field);

class CsvWriter {
   public:
    CsvWriter(std::ostream &out, const std::vector<std::string> &header);
    void row(const std::vector<std::string> &fields);

   private:
    std::ostream &out_;
    size_t columns_;
};

/// Parses RFC 4180 text (quoted fields, doubled quotes, CRLF or LF records).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// "a,b,c" or "start:stop:step".
std::vector<double> parse_value_list(std::string_view text);

}  // namespace qorder::io
