#include "postmine/io.hpp"

#include "postmine/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace postmine::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<CsvRecord> parse_csv(std::string_view content) {
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = content.size();
    while (i < n) {
        CsvRecord rec;
        rec.line = line;
        std::string field;
        bool done = false;
        while (!done) {
            field.clear();
            if (i < n && content[i] == '"') {
                const std::size_t open_line = line;
                ++i;
                for (;;) {
                    if (i >= n) {
                        throw ParseError(
                            fmt::format("line {}: unterminated quoted field", open_line));
                    }
                    const char c = content[i++];
                    if (c == '"') {
                        if (i < n && content[i] == '"') {
                            field += '"';
                            ++i;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field += c;
                    }
                }
                if (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
                    throw ParseError(
                        fmt::format("line {}: unexpected character after closing quote", line));
                }
            } else {
                while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
                    if (content[i] == '"') {
                        throw ParseError(fmt::format("line {}: stray quote in unquoted field", line));
                    }
                    field += content[i++];
                }
            }
            rec.fields.push_back(field);
            if (i >= n) {
                done = true;
            } else if (content[i] == ',') {
                ++i;
            } else {
                if (content[i] == '\r') ++i;
                if (i < n && content[i] == '\n') ++i;
                ++line;
                done = true;
            }
        }
        // A bare empty line is not a record.
        if (!(rec.fields.size() == 1 && rec.fields[0].empty())) records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::pair<std::size_t, std::string_view>> lines(std::string_view content) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 1;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        std::string_view l = content.substr(start, end - start);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        out.emplace_back(number++, l);
        start = end + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string format_ratio(unsigned long long num, unsigned long long den, int places) {
    using boost::multiprecision::cpp_int;
    if (den == 0) throw ArgumentError("format_ratio: zero denominator");
    cpp_int scale = 1;
    for (int k = 0; k < places; ++k) scale *= 10;
    cpp_int scaled = (cpp_int(num) * scale * 2 + den) / (cpp_int(den) * 2);
    const cpp_int whole = scaled / scale;
    const cpp_int frac = scaled % scale;
    std::string f = frac.str();
    if (places == 0) return whole.str();
    return whole.str() + "." + std::string(static_cast<std::size_t>(places) - f.size(), '0') + f;
}

}  // namespace postmine::io
