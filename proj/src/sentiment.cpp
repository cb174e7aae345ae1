#include "postmine/sentiment.hpp"

#include "postmine/bundled.hpp"
#include "postmine/error.hpp"
#include "postmine/io.hpp"
#include "postmine/unicode.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>

namespace postmine {

namespace {

std::unordered_set<std::string> folded_set(const std::vector<std::string>& words) {
    std::unordered_set<std::string> out;
    for (const auto& w : words) {
        const auto t = io::trim(w);
        if (!t.empty()) out.insert(unicode::fold(t));
    }
    return out;
}

}  // namespace

SentimentLexicon::SentimentLexicon(const std::vector<std::string>& positive, const std::vector<std::string>& negative)
    : positive_(folded_set(positive)), negative_(folded_set(negative)) {
    std::vector<std::string> overlap;
    for (const auto& w : positive_) {
        if (negative_.contains(w)) overlap.push_back(w);
    }
    if (!overlap.empty()) {
        std::sort(overlap.begin(), overlap.end());
        std::string list;
        for (const auto& w : overlap) list += (list.empty() ? "" : ", ") + w;
        throw ValidationError(fmt::format("lexicon words listed as both positive and negative: {}", list));
    }
}

SentimentLexicon SentimentLexicon::swapped() const {
    SentimentLexicon out;
    out.positive_ = negative_;
    out.negative_ = positive_;
    return out;
}

std::vector<std::string> read_lexicon_words(const std::filesystem::path& path) {
    std::vector<std::string> words;
    const std::string content = io::read_file(path);
    for (const auto& [number, line] : io::lines(content)) {
        const auto t = io::trim(line);
        if (t.empty() || t.front() == ';') continue;
        if (!unicode::is_valid_utf8(t)) {
            throw ParseError(fmt::format("{}:{}: invalid UTF-8", path.string(), number));
        }
        words.emplace_back(t);
    }
    return words;
}

SentimentLexicon load_lexicon(const std::filesystem::path& positive_path, const std::filesystem::path& negative_path) {
    return SentimentLexicon(read_lexicon_words(positive_path), read_lexicon_words(negative_path));
}

SentimentLexicon bundled_lexicon() {
    return load_lexicon(bundled_path("lexicon/positive-words.txt"), bundled_path("lexicon/negative-words.txt"));
}

std::string_view to_string(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::neutral: return "neutral";
    }
    return "neutral";
}

PolarityResult polarity(const TokenStream& tokens, const SentimentLexicon& lex) {
    PolarityResult r;
    r.post_id = tokens.post_id;
    for (const auto& t : tokens.tokens) {
        if (lex.is_positive(t)) ++r.positive_hits;
        if (lex.is_negative(t)) ++r.negative_hits;
    }
    r.score = static_cast<long long>(r.positive_hits) - static_cast<long long>(r.negative_hits);
    r.label = r.score > 0 ? Polarity::positive : r.score < 0 ? Polarity::negative : Polarity::neutral;
    return r;
}

CorpusPolarity corpus_polarity(std::span<const TokenStream> streams, const SentimentLexicon& lex) {
    CorpusPolarity out;
    out.documents.reserve(streams.size());
    for (const auto& s : streams) {
        auto r = polarity(s, lex);
        switch (r.label) {
            case Polarity::positive: ++out.distribution.positive; break;
            case Polarity::negative: ++out.distribution.negative; break;
            case Polarity::neutral: ++out.distribution.neutral; break;
        }
        out.documents.push_back(std::move(r));
    }
    return out;
}

std::string polarity_table(std::span<const PolarityResult> results) {
    std::string out = "post_id,pos_hits,neg_hits,score,label\n";
    for (const auto& r : results) {
        out += fmt::format("{},{},{},{},{}\n", io::csv_field(r.post_id), r.positive_hits, r.negative_hits, r.score,
                           to_string(r.label));
    }
    return out;
}

std::vector<PolarityResult> parse_polarity_table(std::string_view content) {
    const auto records = io::parse_csv(content);
    if (records.empty()) throw ParseError("polarity table is empty");
    auto number = [](const std::string& s, std::size_t line) {
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ParseError(fmt::format("line {}: '{}' is not an integer", line, s));
        }
        return v;
    };
    std::vector<PolarityResult> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        const auto line = records[i].line;
        if (f.size() != 5) throw ParseError(fmt::format("line {}: polarity row needs 5 fields", line));
        PolarityResult r;
        r.post_id = f[0];
        r.positive_hits = static_cast<std::size_t>(number(f[1], line));
        r.negative_hits = static_cast<std::size_t>(number(f[2], line));
        r.score = number(f[3], line);
        r.label = r.score > 0 ? Polarity::positive : r.score < 0 ? Polarity::negative : Polarity::neutral;
        if (to_string(r.label) != f[4]) throw ParseError(fmt::format("line {}: label does not match score", line));
        out.push_back(std::move(r));
    }
    return out;
}

std::string distribution_table(const PolarityDistribution& d) {
    return fmt::format("label,count\npositive,{}\nnegative,{}\nneutral,{}\n", d.positive, d.negative, d.neutral);
}

}  // namespace postmine
