#include "qorder/io.h"

#include <charconv>
#include <ostream>

#include "qorder/error.h"
#include "qorder/ordering.h"

namespace qorder::io {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error(ErrorKind::DomainError, "not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::ostream &out, const std::vector<std::string> &header) : out_(out), columns_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &fields) {
    if (fields.size() != columns_) {
        throw Error(ErrorKind::DomainError, "CSV row width does not match header");
    }
    for (size_t i = 0; i < fields.size(); i++) {
        if (i) {
            out_ << ',';
        }
        out_ << csv_escape(fields[i]);
    }
    out_ << "\r\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (size_t i = 0; i < text.size(); i++) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i++;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                record.push_back(std::move(field));
                field.clear();
                records.push_back(std::move(record));
                record.clear();
                any = false;
                break;
            default:
                field += c;
                any = true;
        }
    }
    if (quoted) {
        throw Error(ErrorKind::DomainError, "unterminated quoted CSV field");
    }
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<double> parse_value_list(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        size_t a = text.find(':');
        size_t b = text.find(':', a + 1);
        if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
            throw Error(ErrorKind::DomainError, "range must be start:stop:step");
        }
        return linspace_step(
            parse_double(text.substr(0, a)), parse_double(text.substr(a + 1, b - a - 1)), parse_double(text.substr(b + 1)));
    }
    std::vector<double> out;
    size_t start = 0;
    while (true) {
        size_t comma = text.find(',', start);
        out.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace qorder::io
