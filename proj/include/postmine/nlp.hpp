#pragma once

#include "postmine/corpus.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace postmine {

struct TokenStream {
    std::string post_id;
    std::vector<std::string> tokens;
};

/// Per-language stopword sets keyed by ISO 639-1 code. Entries are stored in
/// folded form so they compare equal to normalized tokens.
class StopwordLists {
public:
    StopwordLists() = default;

    void add(const std::string& language, const std::vector<std::string>& words);
    /// One word per line; '#' comment lines ignored.
    void add_file(const std::string& language, const std::filesystem::path& path);

    bool has_language(std::string_view language) const;
    const std::unordered_set<std::string>& words(std::string_view language) const;
    std::vector<std::string> languages() const;

    /// Bundled en / es / it lists.
    static StopwordLists bundled();

private:
    std::map<std::string, std::unordered_set<std::string>, std::less<>> lists_;
};

/// Strips URLs, digit runs, emoticons and symbol codepoints; drops the '#'
/// and '@' markers but keeps the word; other punctuation becomes a space.
/// Whitespace in the result is collapsed to single spaces and trimmed.
std::string clean_text(std::string_view raw);

std::vector<std::string> tokenize(std::string_view cleaned);

/// NFC, lowercase, diacritic folding; tokens that fold to nothing are dropped.
std::vector<std::string> normalize(std::span<const std::string> tokens);

/// Throws ArgumentError for a language not present in `lists`.
std::vector<std::string> remove_stopwords(std::span<const std::string> tokens, const StopwordLists& lists,
                                          const std::set<std::string>& languages);

struct PreprocessConfig {
    StopwordLists stopwords = StopwordLists::bundled();
    std::set<std::string> languages = {"en", "es", "it"};
};

TokenStream preprocess(const Post& p, const PreprocessConfig& config);
std::vector<TokenStream> preprocess(const Corpus& c, const PreprocessConfig& config);

/// One JSON object per line: {"post_id": ..., "tokens": [...]}.
void write_token_streams(std::span<const TokenStream> streams, const std::filesystem::path& path);
std::vector<TokenStream> read_token_streams(const std::filesystem::path& path);

}  // namespace postmine
