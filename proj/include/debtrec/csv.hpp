#pragma once

// Minimal comma-separated tables: a required header row, no quoting.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace debtrec {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column; throws ValidationError naming the file's
    /// missing column.
    std::size_t column(std::string_view name) const;
};

/// Throws IoError when the file cannot be opened, ValidationError on a
/// missing header or a row with the wrong number of fields.
CsvTable read_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full decimal field; throws ValidationError with `context`.
double parse_double(std::string_view text, std::string_view context);
long long parse_integer(std::string_view text, std::string_view context);

}  // namespace debtrec
