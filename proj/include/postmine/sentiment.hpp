#pragma once

#include "postmine/nlp.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace postmine {

/// Disjoint positive / negative word sets. Entries are folded the same way
/// as corpus tokens (lowercase, accents removed).
class SentimentLexicon {
public:
    SentimentLexicon() = default;
    /// Throws ValidationError listing every word present in both sets.
    SentimentLexicon(const std::vector<std::string>& positive, const std::vector<std::string>& negative);

    const std::unordered_set<std::string>& positive() const noexcept { return positive_; }
    const std::unordered_set<std::string>& negative() const noexcept { return negative_; }

    bool is_positive(const std::string& w) const { return positive_.contains(w); }
    bool is_negative(const std::string& w) const { return negative_.contains(w); }

    SentimentLexicon swapped() const;

private:
    std::unordered_set<std::string> positive_;
    std::unordered_set<std::string> negative_;
};

/// One word per line; lines starting with ';' and blank lines are skipped.
std::vector<std::string> read_lexicon_words(const std::filesystem::path& path);
SentimentLexicon load_lexicon(const std::filesystem::path& positive_path, const std::filesystem::path& negative_path);
SentimentLexicon bundled_lexicon();

enum class Polarity { positive, negative, neutral };
std::string_view to_string(Polarity p);

struct PolarityResult {
    std::string post_id;
    std::size_t positive_hits = 0;
    std::size_t negative_hits = 0;
    long long score = 0;
    Polarity label = Polarity::neutral;
};

PolarityResult polarity(const TokenStream& tokens, const SentimentLexicon& lex);

struct PolarityDistribution {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t neutral = 0;
};

struct CorpusPolarity {
    std::vector<PolarityResult> documents;
    PolarityDistribution distribution;
};

CorpusPolarity corpus_polarity(std::span<const TokenStream> streams, const SentimentLexicon& lex);

/// `post_id,pos_hits,neg_hits,score,label`
std::string polarity_table(std::span<const PolarityResult> results);
std::vector<PolarityResult> parse_polarity_table(std::string_view content);
/// `label,count`
std::string distribution_table(const PolarityDistribution& d);

}  // namespace postmine
