#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace postmine {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses an RFC 3339 date-time ("2016-03-01T09:30:00Z", "...+01:00",
/// optional fractional seconds) into UTC. Throws ParseError.
Timestamp parse_timestamp(std::string_view text);
/// UTC, millisecond precision, trailing 'Z'.
std::string format_timestamp(Timestamp t);

struct Post {
    std::string id;
    std::string author;
    std::int64_t followers = 0;
    std::int64_t retweets = 0;
    std::int64_t favorites = 0;
    std::string text;
    Timestamp timestamp{};
    std::optional<std::string> language_hint;
};

/// Throws ValidationError when a Post invariant does not hold.
void validate_post(const Post& p);

struct LineageEntry {
    std::string description;
    std::size_t before = 0;
    std::size_t after = 0;
};

/// Immutable ordered collection of posts plus the filters that produced it.
class Corpus {
public:
    Corpus() = default;
    /// Validates every post and id uniqueness; lineage must be non-increasing.
    Corpus(std::vector<Post> posts, std::string source_label, std::vector<LineageEntry> lineage);

    const std::vector<Post>& posts() const noexcept { return posts_; }
    const std::string& source_label() const noexcept { return source_label_; }
    const std::vector<LineageEntry>& lineage() const noexcept { return lineage_; }
    std::size_t size() const noexcept { return posts_.size(); }
    bool empty() const noexcept { return posts_.empty(); }

    /// Subsequence of this corpus at `keep` (ascending indices) with one more
    /// lineage entry.
    Corpus select(std::span<const std::size_t> keep, std::string description) const;

private:
    std::vector<Post> posts_;
    std::string source_label_;
    std::vector<LineageEntry> lineage_;
};

enum class InputFormat { delimited, record_per_line };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat f);

Corpus load_corpus(const std::filesystem::path& path, InputFormat format);
Corpus parse_delimited(std::string_view content, std::string source_label);
Corpus parse_record_lines(std::string_view content, std::string source_label);

/// Writes posts as one JSON object per line (the record-per-line format).
void write_record_lines(const Corpus& c, const std::filesystem::path& path);
void write_lineage(const Corpus& c, const std::filesystem::path& path);
/// Restores lineage written by write_lineage onto an already loaded corpus.
Corpus with_lineage(const Corpus& c, const std::filesystem::path& lineage_path);

Corpus filter_by_date(const Corpus& c, Timestamp start, Timestamp end);

class KeywordSet {
public:
    /// Keywords are folded (lowercase, accents removed) and trimmed on entry.
    KeywordSet(std::string theme, const std::vector<std::string>& keywords);

    const std::string& theme() const noexcept { return theme_; }
    const std::vector<std::string>& keywords() const noexcept { return keywords_; }

private:
    std::string theme_;
    std::vector<std::string> keywords_;  // sorted, unique
};

std::vector<KeywordSet> parse_keyword_sets(std::string_view content);
std::vector<KeywordSet> load_keyword_sets(const std::filesystem::path& path);

/// Folded keyword-matching tokens: maximal letter/digit runs.
std::vector<std::string> match_tokens(std::string_view text);
bool matches_any(std::string_view text, std::span<const KeywordSet> sets);

Corpus filter_by_keywords(const Corpus& c, std::span<const KeywordSet> sets);

}  // namespace postmine
