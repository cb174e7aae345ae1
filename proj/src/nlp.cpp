#include "postmine/nlp.hpp"

#include "postmine/bundled.hpp"
#include "postmine/error.hpp"
#include "postmine/io.hpp"
#include "postmine/unicode.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <array>

namespace postmine {

void StopwordLists::add(const std::string& language, const std::vector<std::string>& words) {
    auto& set = lists_[language];
    for (const auto& w : words) {
        const auto t = io::trim(w);
        if (t.empty()) continue;
        set.insert(unicode::fold(t));
    }
}

void StopwordLists::add_file(const std::string& language, const std::filesystem::path& path) {
    std::vector<std::string> words;
    const std::string content = io::read_file(path);
    for (const auto& [number, line] : io::lines(content)) {
        const auto t = io::trim(line);
        if (t.empty() || t.front() == '#') continue;
        words.emplace_back(t);
    }
    add(language, words);
}

bool StopwordLists::has_language(std::string_view language) const {
    return lists_.find(language) != lists_.end();
}

const std::unordered_set<std::string>& StopwordLists::words(std::string_view language) const {
    const auto it = lists_.find(language);
    if (it == lists_.end()) throw ArgumentError(fmt::format("unknown stopword language '{}'", language));
    return it->second;
}

std::vector<std::string> StopwordLists::languages() const {
    std::vector<std::string> out;
    for (const auto& [lang, _] : lists_) out.push_back(lang);
    return out;
}

StopwordLists StopwordLists::bundled() {
    StopwordLists lists;
    for (const char* lang : {"en", "es", "it"}) {
        lists.add_file(lang, bundled_path(fmt::format("stopwords/{}.txt", lang)));
    }
    return lists;
}

namespace {

constexpr std::array<std::u32string_view, 10> kEmoticons = {
    U":)", U":(", U";)", U":D", U":P", U":-)", U":-(", U";-)", U":-D", U":-P"};

bool is_scheme_char(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') || c == U'+' ||
           c == U'-' || c == U'.';
}

bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

std::size_t chunk_end(const std::u32string& s, std::size_t from) {
    while (from < s.size() && !unicode::is_space(s[from])) ++from;
    return from;
}

void mark_urls(const std::u32string& s, std::vector<bool>& drop) {
    // scheme://...
    for (std::size_t pos = s.find(U"://"); pos != std::u32string::npos; pos = s.find(U"://", pos + 3)) {
        std::size_t start = pos;
        while (start > 0 && is_scheme_char(s[start - 1])) --start;
        while (start < pos && !is_ascii_alpha(s[start])) ++start;
        if (start == pos) continue;
        const std::size_t end = chunk_end(s, pos);
        std::fill(drop.begin() + static_cast<std::ptrdiff_t>(start), drop.begin() + static_cast<std::ptrdiff_t>(end),
                  true);
    }
    // www.<host>
    for (std::size_t i = 0; i + 4 <= s.size(); ++i) {
        const bool boundary = i == 0 || !(unicode::is_letter(s[i - 1]) || unicode::is_digit_like(s[i - 1]));
        if (!boundary) continue;
        if (ascii_lower(s[i]) == U'w' && ascii_lower(s[i + 1]) == U'w' && ascii_lower(s[i + 2]) == U'w' &&
            s[i + 3] == U'.') {
            const std::size_t end = chunk_end(s, i);
            std::fill(drop.begin() + static_cast<std::ptrdiff_t>(i), drop.begin() + static_cast<std::ptrdiff_t>(end),
                      true);
            i = end;
        }
    }
}

void mark_emoticons(const std::u32string& s, std::vector<bool>& drop) {
    std::size_t i = 0;
    while (i < s.size()) {
        if (unicode::is_space(s[i])) {
            ++i;
            continue;
        }
        const std::size_t end = chunk_end(s, i);
        const std::u32string_view chunk(s.data() + i, end - i);
        for (auto e : kEmoticons) {
            if (chunk.size() >= e.size() && (chunk.starts_with(e) || chunk.ends_with(e))) {
                const std::size_t at = chunk.starts_with(e) ? i : end - e.size();
                std::fill(drop.begin() + static_cast<std::ptrdiff_t>(at),
                          drop.begin() + static_cast<std::ptrdiff_t>(at + e.size()), true);
                break;
            }
        }
        i = end;
    }
}

bool is_variation_selector(char32_t c) {
    return (c >= 0xFE00 && c <= 0xFE0F) || (c >= 0xE0100 && c <= 0xE01EF);
}

}  // namespace

std::string clean_text(std::string_view raw) {
    const std::u32string s = unicode::to_u32(raw);
    std::vector<bool> drop(s.size(), false);
    mark_urls(s, drop);
    mark_emoticons(s, drop);

    std::u32string out;
    out.reserve(s.size());
    bool pending_space = false;
    auto emit_space = [&] { pending_space = !out.empty(); };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (drop[i]) continue;
        const char32_t c = s[i];
        if (c == U'#' || c == U'@') {
            const bool mid_word = i > 0 && !drop[i - 1] &&
                                  (unicode::is_letter(s[i - 1]) || unicode::is_digit_like(s[i - 1]));
            if (mid_word) emit_space();
            continue;
        }
        if (unicode::is_space(c)) {
            emit_space();
        } else if (unicode::is_letter(c) ||
                   (unicode::is_mark(c) && !unicode::is_enclosing_mark(c) && !is_variation_selector(c))) {
            if (pending_space) out.push_back(U' ');
            pending_space = false;
            out.push_back(c);
        } else if (unicode::is_digit_like(c) || unicode::is_symbol(c) || unicode::is_pictographic(c) ||
                   unicode::is_format_or_control(c) || is_variation_selector(c) || unicode::is_mark(c)) {
            // deleted without a separator
        } else {
            emit_space();
        }
    }
    return unicode::to_utf8(out);
}

std::vector<std::string> tokenize(std::string_view cleaned) {
    const std::u32string s = unicode::to_u32(cleaned);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && unicode::is_space(s[i])) ++i;
        const std::size_t start = i;
        while (i < s.size() && !unicode::is_space(s[i])) ++i;
        if (i > start) tokens.push_back(unicode::to_utf8(std::u32string_view(s.data() + start, i - start)));
    }
    return tokens;
}

std::vector<std::string> normalize(std::span<const std::string> tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        std::string folded = unicode::fold(t);
        if (!io::trim(folded).empty()) out.push_back(std::move(folded));
    }
    return out;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens, const StopwordLists& lists,
                                          const std::set<std::string>& languages) {
    std::vector<const std::unordered_set<std::string>*> active;
    for (const auto& lang : languages) active.push_back(&lists.words(lang));
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        const bool stop = std::any_of(active.begin(), active.end(), [&](auto* set) { return set->contains(t); });
        if (!stop) out.push_back(t);
    }
    return out;
}

TokenStream preprocess(const Post& p, const PreprocessConfig& config) {
    const auto raw = tokenize(clean_text(p.text));
    const auto normalized = normalize(raw);
    return {p.id, remove_stopwords(normalized, config.stopwords, config.languages)};
}

std::vector<TokenStream> preprocess(const Corpus& c, const PreprocessConfig& config) {
    std::vector<TokenStream> out;
    out.reserve(c.size());
    for (const auto& p : c.posts()) out.push_back(preprocess(p, config));
    return out;
}

void write_token_streams(std::span<const TokenStream> streams, const std::filesystem::path& path) {
    std::string out;
    for (const auto& s : streams) {
        nlohmann::ordered_json j;
        j["post_id"] = s.post_id;
        j["tokens"] = s.tokens;
        out += j.dump();
        out += '\n';
    }
    io::write_file(path, out);
}

std::vector<TokenStream> read_token_streams(const std::filesystem::path& path) {
    std::vector<TokenStream> streams;
    const std::string content = io::read_file(path);
    for (const auto& [number, line] : io::lines(content)) {
        if (io::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            streams.push_back({j.at("post_id").get<std::string>(), j.at("tokens").get<std::vector<std::string>>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(fmt::format("{}:{}: malformed token stream: {}", path.string(), number, e.what()));
        }
    }
    return streams;
}

}  // namespace postmine
