#include "qagap/csv.hpp"

#include <charconv>
#include <cmath>

#include "qagap/errors.hpp"

namespace qagap {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw InternalInvariantError("double formatting failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out), columns_(header.size()) {
    bool first = true;
    for (auto h : header) {
        if (!first) out_ << ',';
        out_ << h;
        first = false;
    }
    out_ << '\n';
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_double(value))); }

CsvWriter& CsvWriter::field(long long value) { return field(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::field(std::string_view text) {
    if (current_ >= columns_) throw InternalInvariantError("too many CSV fields in row");
    if (current_ > 0) out_ << ',';
    out_ << text;
    ++current_;
    return *this;
}

CsvWriter& CsvWriter::blank() { return field(std::string_view{}); }

void CsvWriter::end_row() {
    if (current_ != columns_) throw InternalInvariantError("incomplete CSV row");
    out_ << '\n';
    current_ = 0;
}

}  // namespace qagap
