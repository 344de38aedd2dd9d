#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qagap {

/// Round-trip formatting: 17 significant digits, '.' decimal point, no locale.
std::string format_double(double value);

/// Minimal comma-separated writer. Fields are written verbatim.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    CsvWriter& field(std::string_view text);
    /// An empty cell.
    CsvWriter& blank();
    void end_row();

private:
    std::ostream& out_;
    std::size_t columns_;
    std::size_t current_ = 0;
};

}  // namespace qagap
