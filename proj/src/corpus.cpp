#include "postmine/corpus.hpp"

#include "postmine/error.hpp"
#include "postmine/io.hpp"
#include "postmine/unicode.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace postmine {

namespace {

using namespace std::chrono;

int parse_fixed_digits(std::string_view text, std::size_t pos, std::size_t count,
                       std::string_view whole) {
    if (pos + count > text.size()) {
        throw ParseError(fmt::format("invalid timestamp '{}'", whole));
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') throw ParseError(fmt::format("invalid timestamp '{}'", whole));
        value = value * 10 + (c - '0');
    }
    return value;
}

void expect_char(std::string_view text, std::size_t pos, std::string_view allowed,
                 std::string_view whole) {
    if (pos >= text.size() || allowed.find(text[pos]) == std::string_view::npos) {
        throw ParseError(fmt::format("invalid timestamp '{}'", whole));
    }
}

std::int64_t parse_count(std::string_view field, std::string_view name, std::size_t line) {
    const auto f = io::trim(field);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError(fmt::format("line {}: field '{}' is not an integer: '{}'", line, name, field));
    }
    return value;
}

void validate_at(const Post& p, std::size_t line) {
    try {
        validate_post(p);
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("line {}: {}", line, e.what()));
    }
}

void check_unique_ids(const std::vector<Post>& posts, const std::vector<std::size_t>& lines) {
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        if (!seen.insert(posts[i].id).second) {
            const std::string where = lines.empty() ? "" : fmt::format("line {}: ", lines[i]);
            throw ValidationError(fmt::format("{}duplicate post id '{}'", where, posts[i].id));
        }
    }
}

const std::vector<std::string> kRequiredColumns = {"id",        "author",    "followers", "retweets",
                                                   "favorites", "timestamp", "text"};

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
    const std::string_view s = io::trim(text);
    const int y = parse_fixed_digits(s, 0, 4, text);
    expect_char(s, 4, "-", text);
    const int mo = parse_fixed_digits(s, 5, 2, text);
    expect_char(s, 7, "-", text);
    const int d = parse_fixed_digits(s, 8, 2, text);
    expect_char(s, 10, "Tt ", text);
    const int h = parse_fixed_digits(s, 11, 2, text);
    expect_char(s, 13, ":", text);
    const int mi = parse_fixed_digits(s, 14, 2, text);
    expect_char(s, 16, ":", text);
    const int sec = parse_fixed_digits(s, 17, 2, text);
    std::size_t pos = 19;

    int millis = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        const std::size_t frac_start = pos;
        int scale = 100;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            millis += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
        }
        if (pos == frac_start) throw ParseError(fmt::format("invalid timestamp '{}'", text));
    }

    int offset_minutes = 0;
    expect_char(s, pos, "Zz+-", text);
    if (s[pos] == 'Z' || s[pos] == 'z') {
        ++pos;
    } else {
        const int sign = s[pos] == '-' ? -1 : 1;
        const int oh = parse_fixed_digits(s, pos + 1, 2, text);
        expect_char(s, pos + 3, ":", text);
        const int om = parse_fixed_digits(s, pos + 4, 2, text);
        if (oh > 23 || om > 59) throw ParseError(fmt::format("invalid timestamp '{}'", text));
        offset_minutes = sign * (oh * 60 + om);
        pos += 6;
    }
    if (pos != s.size()) throw ParseError(fmt::format("invalid timestamp '{}'", text));

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) {
        throw ParseError(fmt::format("invalid timestamp '{}'", text));
    }
    return Timestamp{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{millis} -
           minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    auto rest = t - day_point;
    const auto h = duration_cast<hours>(rest);
    rest -= h;
    const auto m = duration_cast<minutes>(rest);
    rest -= m;
    const auto s = duration_cast<seconds>(rest);
    rest -= s;
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), h.count(),
                       m.count(), s.count(), rest.count());
}

void validate_post(const Post& p) {
    if (io::trim(p.id).empty()) throw ValidationError("post id is empty");
    if (p.followers < 0) throw ValidationError(fmt::format("post '{}': followers must be non-negative", p.id));
    if (p.retweets < 0) throw ValidationError(fmt::format("post '{}': retweets must be non-negative", p.id));
    if (p.favorites < 0) throw ValidationError(fmt::format("post '{}': favorites must be non-negative", p.id));
    if (!unicode::is_valid_utf8(p.text) || !unicode::is_valid_utf8(p.author) ||
        !unicode::is_valid_utf8(p.id)) {
        throw ValidationError(fmt::format("post '{}': invalid UTF-8", p.id));
    }
    if (io::trim(p.text).empty()) throw ValidationError(fmt::format("post '{}': text is empty", p.id));
}

Corpus::Corpus(std::vector<Post> posts, std::string source_label, std::vector<LineageEntry> lineage)
    : posts_(std::move(posts)), source_label_(std::move(source_label)), lineage_(std::move(lineage)) {
    for (const auto& p : posts_) validate_post(p);
    check_unique_ids(posts_, {});
    for (std::size_t i = 0; i < lineage_.size(); ++i) {
        const auto& e = lineage_[i];
        const bool bad_step = e.after > e.before;
        const bool bad_chain = i > 0 && e.before > lineage_[i - 1].after;
        if (bad_step || bad_chain) {
            throw ValidationError(fmt::format("lineage entry '{}' increases the post count", e.description));
        }
    }
}

Corpus Corpus::select(std::span<const std::size_t> keep, std::string description) const {
    std::vector<Post> out;
    out.reserve(keep.size());
    for (std::size_t idx : keep) out.push_back(posts_.at(idx));
    auto lineage = lineage_;
    lineage.push_back({std::move(description), posts_.size(), out.size()});
    return Corpus(std::move(out), source_label_, std::move(lineage));
}

InputFormat parse_input_format(std::string_view name) {
    if (name == "delimited" || name == "csv") return InputFormat::delimited;
    if (name == "record-per-line" || name == "jsonl") return InputFormat::record_per_line;
    throw ArgumentError(fmt::format("unknown input format '{}'", name));
}

std::string_view to_string(InputFormat f) {
    return f == InputFormat::delimited ? "delimited" : "record-per-line";
}

Corpus parse_delimited(std::string_view content, std::string source_label) {
    const auto records = io::parse_csv(content);
    if (records.empty()) throw ParseError("no records");

    const auto& header = records.front();
    std::vector<std::string> columns;
    for (const auto& f : header.fields) columns.emplace_back(io::trim(f));
    if (!columns.empty() && columns[0].starts_with("\xEF\xBB\xBF")) columns[0].erase(0, 3);
    const bool has_hint = columns.size() == kRequiredColumns.size() + 1 && columns.back() == "language_hint";
    if (!std::equal(kRequiredColumns.begin(), kRequiredColumns.end(), columns.begin(),
                    columns.begin() + static_cast<std::ptrdiff_t>(
                                          std::min(columns.size(), kRequiredColumns.size()))) ||
        (columns.size() != kRequiredColumns.size() && !has_hint)) {
        throw ParseError(fmt::format("line {}: header must be '{}'", header.line,
                                     "id,author,followers,retweets,favorites,timestamp,text"));
    }
    if (records.size() == 1) throw ParseError("no records");

    std::vector<Post> posts;
    std::vector<std::size_t> lines;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != columns.size()) {
            throw ParseError(fmt::format("line {}: expected {} fields, found {}", rec.line, columns.size(),
                                         rec.fields.size()));
        }
        Post p;
        p.id = std::string(io::trim(rec.fields[0]));
        p.author = rec.fields[1];
        p.followers = parse_count(rec.fields[2], "followers", rec.line);
        p.retweets = parse_count(rec.fields[3], "retweets", rec.line);
        p.favorites = parse_count(rec.fields[4], "favorites", rec.line);
        try {
            p.timestamp = parse_timestamp(rec.fields[5]);
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("line {}: {}", rec.line, e.what()));
        }
        p.text = rec.fields[6];
        if (has_hint && !io::trim(rec.fields[7]).empty()) p.language_hint = std::string(io::trim(rec.fields[7]));
        validate_at(p, rec.line);
        posts.push_back(std::move(p));
        lines.push_back(rec.line);
    }
    check_unique_ids(posts, lines);
    const std::size_t n = posts.size();
    return Corpus(std::move(posts), std::move(source_label), {{"load", n, n}});
}

Corpus parse_record_lines(std::string_view content, std::string source_label) {
    std::vector<Post> posts;
    std::vector<std::size_t> lines;
    for (const auto& [number, raw] : io::lines(content)) {
        if (io::trim(raw).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(fmt::format("line {}: malformed record: {}", number, e.what()));
        }
        if (!j.is_object()) throw ParseError(fmt::format("line {}: record is not an object", number));
        auto str = [&](const char* key) -> std::string {
            if (!j.contains(key) || !j[key].is_string()) {
                throw ParseError(fmt::format("line {}: missing or non-string field '{}'", number, key));
            }
            return j[key].get<std::string>();
        };
        auto count = [&](const char* key) -> std::int64_t {
            if (!j.contains(key) || !j[key].is_number_integer()) {
                throw ParseError(fmt::format("line {}: missing or non-integer field '{}'", number, key));
            }
            return j[key].get<std::int64_t>();
        };
        Post p;
        p.id = str("id");
        p.author = str("author");
        p.followers = count("followers");
        p.retweets = count("retweets");
        p.favorites = count("favorites");
        try {
            p.timestamp = parse_timestamp(str("timestamp"));
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("line {}: {}", number, e.what()));
        }
        p.text = str("text");
        if (j.contains("language_hint") && j["language_hint"].is_string()) {
            p.language_hint = j["language_hint"].get<std::string>();
        }
        validate_at(p, number);
        posts.push_back(std::move(p));
        lines.push_back(number);
    }
    if (posts.empty()) throw ParseError("no records");
    check_unique_ids(posts, lines);
    const std::size_t n = posts.size();
    return Corpus(std::move(posts), std::move(source_label), {{"load", n, n}});
}

Corpus load_corpus(const std::filesystem::path& path, InputFormat format) {
    const std::string content = io::read_file(path);
    const std::string label = path.filename().string();
    return format == InputFormat::delimited ? parse_delimited(content, label)
                                            : parse_record_lines(content, label);
}

void write_record_lines(const Corpus& c, const std::filesystem::path& path) {
    std::string out;
    for (const auto& p : c.posts()) {
        nlohmann::ordered_json j;
        j["id"] = p.id;
        j["author"] = p.author;
        j["followers"] = p.followers;
        j["retweets"] = p.retweets;
        j["favorites"] = p.favorites;
        j["timestamp"] = format_timestamp(p.timestamp);
        j["text"] = p.text;
        if (p.language_hint) j["language_hint"] = *p.language_hint;
        out += j.dump();
        out += '\n';
    }
    io::write_file(path, out);
}

void write_lineage(const Corpus& c, const std::filesystem::path& path) {
    std::string out = "stage,before,after\n";
    for (const auto& e : c.lineage()) {
        out += fmt::format("{},{},{}\n", io::csv_field(e.description), e.before, e.after);
    }
    io::write_file(path, out);
}

Corpus with_lineage(const Corpus& c, const std::filesystem::path& lineage_path) {
    const auto records = io::parse_csv(io::read_file(lineage_path));
    std::vector<LineageEntry> lineage;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r].fields;
        if (f.size() != 3) throw ParseError(fmt::format("line {}: lineage row needs 3 fields", records[r].line));
        lineage.push_back({f[0], static_cast<std::size_t>(parse_count(f[1], "before", records[r].line)),
                           static_cast<std::size_t>(parse_count(f[2], "after", records[r].line))});
    }
    if (!lineage.empty() && lineage.back().after != c.size()) {
        throw ValidationError(fmt::format("lineage '{}' does not match corpus size {}", lineage_path.string(),
                                          c.size()));
    }
    std::vector<Post> posts = c.posts();
    return Corpus(std::move(posts), c.source_label(), std::move(lineage));
}

Corpus filter_by_date(const Corpus& c, Timestamp start, Timestamp end) {
    if (start > end) throw ArgumentError("date filter: start is after end");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto t = c.posts()[i].timestamp;
        if (start <= t && t <= end) keep.push_back(i);
    }
    return c.select(keep, fmt::format("date {}..{}", format_timestamp(start), format_timestamp(end)));
}

KeywordSet::KeywordSet(std::string theme, const std::vector<std::string>& keywords)
    : theme_(io::trim(theme)) {
    if (theme_.empty()) throw ArgumentError("keyword set needs a theme name");
    for (const auto& k : keywords) {
        const auto tokens = match_tokens(k);
        if (tokens.empty()) {
            throw ArgumentError(fmt::format("keyword '{}' in theme '{}' has no letters or digits", k, theme_));
        }
        std::string joined;
        for (const auto& t : tokens) {
            if (!joined.empty()) joined += ' ';
            joined += t;
        }
        keywords_.push_back(std::move(joined));
    }
    if (keywords_.empty()) throw ArgumentError(fmt::format("keyword set '{}' is empty", theme_));
    std::sort(keywords_.begin(), keywords_.end());
    keywords_.erase(std::unique(keywords_.begin(), keywords_.end()), keywords_.end());
}

std::vector<KeywordSet> parse_keyword_sets(std::string_view content) {
    std::vector<KeywordSet> sets;
    std::string theme;
    std::vector<std::string> words;
    bool in_section = false;
    auto flush = [&] {
        if (in_section) sets.emplace_back(theme, words);
        words.clear();
    };
    for (const auto& [number, raw] : io::lines(content)) {
        const auto line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(fmt::format("line {}: unterminated section header", number));
            flush();
            theme = std::string(io::trim(line.substr(1, line.size() - 2)));
            in_section = true;
            continue;
        }
        if (!in_section) throw ParseError(fmt::format("line {}: keyword outside a [theme] section", number));
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) comma = line.size();
            const auto word = io::trim(line.substr(start, comma - start));
            if (!word.empty()) words.emplace_back(word);
            start = comma + 1;
        }
    }
    flush();
    if (sets.empty()) throw ParseError("keyword configuration has no sections");
    return sets;
}

std::vector<KeywordSet> load_keyword_sets(const std::filesystem::path& path) {
    return parse_keyword_sets(io::read_file(path));
}

std::vector<std::string> match_tokens(std::string_view text) {
    const std::u32string folded = unicode::to_u32(unicode::fold(text));
    std::vector<std::string> tokens;
    std::u32string current;
    for (char32_t c : folded) {
        if (unicode::is_letter(c) || unicode::is_digit_like(c)) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(unicode::to_utf8(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(unicode::to_utf8(current));
    return tokens;
}

namespace {

struct KeywordMatcher {
    std::vector<std::vector<std::string>> sequences;

    explicit KeywordMatcher(std::span<const KeywordSet> sets) {
        if (sets.empty()) throw ArgumentError("keyword filter needs at least one keyword set");
        for (const auto& s : sets) {
            for (const auto& k : s.keywords()) sequences.push_back(match_tokens(k));
        }
    }

    bool operator()(std::string_view text) const {
        const auto tokens = match_tokens(text);
        for (const auto& seq : sequences) {
            if (seq.size() > tokens.size()) continue;
            const auto it = std::search(tokens.begin(), tokens.end(), seq.begin(), seq.end());
            if (it != tokens.end()) return true;
        }
        return false;
    }
};

}  // namespace

bool matches_any(std::string_view text, std::span<const KeywordSet> sets) {
    return KeywordMatcher(sets)(text);
}

Corpus filter_by_keywords(const Corpus& c, std::span<const KeywordSet> sets) {
    const KeywordMatcher matcher(sets);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (matcher(c.posts()[i].text)) keep.push_back(i);
    }
    std::string themes;
    for (const auto& s : sets) {
        if (!themes.empty()) themes += '+';
        themes += s.theme();
    }
    return c.select(keep, fmt::format("keywords {}", themes));
}

}  // namespace postmine
