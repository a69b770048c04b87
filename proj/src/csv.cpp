#include "debtrec/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "debtrec/errors.hpp"

namespace debtrec {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    for (;;) {
        const auto comma = line.find(',');
        fields.emplace_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) {
            return fields;
        }
        line.remove_prefix(comma + 1);
    }
}

template <typename T>
T parse_full(std::string_view text, std::string_view context, const char* what) {
    text = trim(text);
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ValidationError(std::string(context) + ": cannot parse '" + std::string(text) +
                              "' as " + what);
    }
    return value;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) {
            return k;
        }
    }
    throw ValidationError("missing CSV column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ValidationError(path.string() + " line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (in.bad()) {
        throw IoError("error while reading '" + path.string() + "'");
    }
    if (table.header.empty()) {
        throw ValidationError(path.string() + ": missing header row");
    }
    return table;
}

std::string format_double(double value) {
    char buf[400];
    const double mag = std::abs(value);
    const bool plain = mag == 0.0 || (mag >= 1e-6 && mag < 1e16);
    auto [ptr, ec] = plain ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed)
                           : std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

double parse_double(std::string_view text, std::string_view context) {
    return parse_full<double>(text, context, "a number");
}

long long parse_integer(std::string_view text, std::string_view context) {
    return parse_full<long long>(text, context, "an integer");
}

}  // namespace debtrec
