#include "support.hpp"

#include "postmine/error.hpp"
#include "postmine/nlp.hpp"
#include "postmine/unicode.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace postmine;

namespace {

using Tokens = std::vector<std::string>;

const std::string banking_post =
    "Blockchain Technology How banks are building a realtime global payment network AccentureSpain";

std::string lower_ascii(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const PreprocessConfig& config() {
    static const PreprocessConfig c;
    return c;
}

}  // namespace

TEST_CASE("clean_text") {
    CHECK(clean_text(banking_post) == banking_post);
    CHECK(clean_text("") == "");
    // The word "Visit" is plain text and stays.
    CHECK(clean_text("Visit https://x.co #IoT @kpmg 2017 :)") == "Visit IoT kpmg");
    CHECK(clean_text("see www.kpmg.es/innovation now") == "see now");
    CHECK(clean_text("great:) day :-( ok") == "great day ok");
    CHECK(clean_text("email#tag and a@b") == "email tag and a b");
    CHECK(clean_text("Big-data, analytics!") == "Big data analytics");
    CHECK(clean_text("año 2017 città") == "año città");
    CHECK(clean_text("rocket \xF0\x9F\x9A\x80 launch \xE2\x9C\x85 \xE2\x9D\xA4\xEF\xB8\x8F") == "rocket launch");
    CHECK(clean_text("C3PO R2D2") == "CPO RD");
    CHECK(clean_text("x\xE2\x80\x8By") == "xy");  // zero width space is a format character
}

TEST_CASE("tokenize and normalize") {
    CHECK(tokenize("big data analytics") == Tokens{"big", "data", "analytics"});
    CHECK(tokenize("  spaced   out  ") == Tokens{"spaced", "out"});
    CHECK(tokenize(lower_ascii(clean_text(banking_post))) ==
          Tokens{"blockchain", "technology", "how", "banks", "are", "building", "a", "realtime", "global", "payment",
                 "network", "accenturespain"});
    CHECK(normalize(Tokens{"Innovación"}) == Tokens{"innovacion"});
    CHECK(normalize(Tokens{"abc"}) == Tokens{"abc"});
    CHECK(normalize(Tokens{"TRANSFORMACIÓN", "Digital"}) == Tokens{"transformacion", "digital"});
    // decomposed input folds to the same token
    CHECK(normalize(Tokens{"Innovacio\xCC\x81n"}) == Tokens{"innovacion"});
    // lowercasing, not full case folding: ß is already lowercase and stays
    CHECK(normalize(Tokens{"ÇA", "ÑANDÚ", "Straße"}) == Tokens{"ca", "nandu", "straße"});
}

TEST_CASE("remove_stopwords") {
    const auto lists = StopwordLists::bundled();
    const std::set<std::string> en{"en"};
    CHECK(remove_stopwords(Tokens{"the", "a", "to"}, lists, en).empty());
    CHECK(remove_stopwords(Tokens{}, lists, en).empty());
    CHECK(remove_stopwords(normalize(tokenize(clean_text(banking_post))), lists, en) ==
          Tokens{"blockchain", "technology", "banks", "building", "realtime", "global", "payment", "network",
                 "accenturespain"});
    CHECK(remove_stopwords(Tokens{"el", "la", "innovacion", "di", "the"}, lists, {"es", "it"}) ==
          Tokens{"innovacion", "the"});
    CHECK_THROWS_AS(remove_stopwords(Tokens{"x"}, lists, {"fr"}), ArgumentError);
    CHECK(lists.languages() == Tokens{"en", "es", "it"});
}

TEST_CASE("preprocess") {
    CHECK(preprocess(support::make_post("1", "the a to"), config()).tokens.empty());
    CHECK(preprocess(support::make_post("1", "https://t.co/abc"), config()).tokens.empty());
    const auto s = preprocess(support::make_post("p", banking_post), config());
    CHECK(s.post_id == "p");
    CHECK(s.tokens.size() == 9);
    CHECK(s.tokens.front() == "blockchain");
}

TEST_CASE("preprocess properties on random text") {
    std::mt19937_64 rng(99);
    const auto lists = StopwordLists::bundled();
    for (int i = 0; i < 300; ++i) {
        const auto text = support::random_text(rng, 0, 20);
        const auto s = preprocess(support::make_post("x", text), config());

        // idempotent on the space-joined output
        std::string joined;
        for (const auto& t : s.tokens) joined += (joined.empty() ? "" : " ") + t;
        CHECK(preprocess(support::make_post("x", joined), config()).tokens == s.tokens);

        for (const auto& t : s.tokens) {
            CHECK_FALSE(t.empty());
            for (char32_t c : unicode::to_u32(t)) {
                CHECK(unicode::is_letter(c));
                CHECK_FALSE(c == U'#');
                CHECK_FALSE(c == U'@');
                CHECK_FALSE((c >= U'A' && c <= U'Z'));
            }
        }

        // cleaning only removes characters or swaps them for spaces
        const auto cleaned = unicode::to_u32(clean_text(text));
        const auto raw = unicode::to_u32(text);
        std::set<char32_t> source(raw.begin(), raw.end());
        for (char32_t c : cleaned) CHECK((c == U' ' || source.count(c) == 1));

        // stopword removal is a subsequence of its input
        const auto norm = normalize(tokenize(clean_text(text)));
        const auto kept = remove_stopwords(norm, lists, {"en", "es", "it"});
        std::size_t pos = 0;
        for (const auto& t : kept) {
            while (pos < norm.size() && norm[pos] != t) ++pos;
            CHECK(pos < norm.size());
            ++pos;
        }
    }
}

TEST_CASE("token stream files round trip") {
    support::TempDir tmp("nlp");
    const std::vector<TokenStream> streams = {{"a", {"x", "año"}}, {"b", {}}, {"c\"q", {"z"}}};
    write_token_streams(streams, tmp.path() / "t.jsonl");
    const auto back = read_token_streams(tmp.path() / "t.jsonl");
    REQUIRE(back.size() == 3);
    CHECK(back[0].tokens == streams[0].tokens);
    CHECK(back[1].tokens.empty());
    CHECK(back[2].post_id == "c\"q");
}
