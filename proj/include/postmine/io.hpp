#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace postmine::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// RFC 4180 field quoting; fields containing ',', '"', CR or LF are quoted.
std::string csv_field(std::string_view s);

struct CsvRecord {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
};

/// RFC 4180 reader. Accepts LF or CRLF line ends; quoted fields may span
/// lines. Throws ParseError naming the line of an unterminated quote.
std::vector<CsvRecord> parse_csv(std::string_view content);

/// Lines with '\r' stripped, paired with 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> lines(std::string_view content);

std::string_view trim(std::string_view s);

/// Round-half-up decimal rendering of a non-negative ratio num/den.
std::string format_ratio(unsigned long long num, unsigned long long den, int places);

}  // namespace postmine::io
