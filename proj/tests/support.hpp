#pragma once
// Fixture builders shared by the unit tests and the acceptance runner.

#include "postmine/corpus.hpp"
#include "postmine/nlp.hpp"

#include <chrono>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace support {

inline postmine::Post make_post(std::string id, std::string text, std::int64_t followers = 100,
                                std::int64_t retweets = 0, std::int64_t favorites = 0,
                                postmine::Timestamp ts = postmine::Timestamp{}, std::string author = "someone") {
    postmine::Post p;
    p.id = std::move(id);
    p.author = std::move(author);
    p.followers = followers;
    p.retweets = retweets;
    p.favorites = favorites;
    p.text = std::move(text);
    p.timestamp = ts;
    return p;
}

inline postmine::Corpus make_corpus(std::vector<postmine::Post> posts) {
    const auto n = posts.size();
    return postmine::Corpus(std::move(posts), "test", {{"load", n, n}});
}

// Words mixed into random post texts: keyword hits in various casings and
// accents, near misses, and filler.
inline const std::vector<std::string>& text_vocabulary() {
    static const std::vector<std::string> v = {
        "Innovation", "INNOVATIVE", "innovate", "renovated", "innovations", "Startup", "startups",
        "entrepreneur", "Entrepreneurship", "emprendedor", "opportunities", "opportunity", "projects",
        "Technology", "technologies", "digital", "transformation", "Digitization", "IoT", "internet",
        "of", "things", "cognitive", "systems", "big", "data", "bigdata", "innovación", "tecnología",
        "éxito", "lunch", "was", "great", "#Innovation", "@startup", "Madrid", "Milano", "the", "a",
        "to", "BIG", "DATA", "Internet", "Things", "año", "città", "2017", ":)", "www.kpmg.es",
        "https://t.co/x1", "good", "bad", "excellent", "problem",
    };
    return v;
}

inline std::string random_text(std::mt19937_64& rng, std::size_t min_words = 1, std::size_t max_words = 12) {
    const auto& v = text_vocabulary();
    std::uniform_int_distribution<std::size_t> len(min_words, max_words), pick(0, v.size() - 1);
    static const char* seps[] = {" ", " ", " ", ", ", ". ", "! ", " - ", "\t"};
    std::uniform_int_distribution<int> sep(0, 7);
    std::string out;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += seps[sep(rng)];
        out += v[pick(rng)];
    }
    return out;
}

inline postmine::Timestamp day(int y, unsigned m, unsigned d) {
    return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

inline postmine::Corpus random_corpus(std::mt19937_64& rng, std::size_t n) {
    std::vector<postmine::Post> posts;
    std::uniform_int_distribution<std::int64_t> followers(0, 5000), counts(0, 300);
    std::uniform_int_distribution<long long> secs(0, 2LL * 365 * 86400);
    std::uniform_int_distribution<int> author(0, 24);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ts = day(2016, 1, 1) + std::chrono::seconds{secs(rng)};
        posts.push_back(make_post("p" + std::to_string(i), random_text(rng), followers(rng), counts(rng), counts(rng),
                                  std::chrono::time_point_cast<std::chrono::milliseconds>(ts),
                                  "user" + std::to_string(author(rng))));
    }
    return make_corpus(std::move(posts));
}

// Random normalized token streams over a small alphabet of terms.
inline std::vector<postmine::TokenStream> random_streams(std::mt19937_64& rng, std::size_t docs, std::size_t terms,
                                                         std::size_t max_len) {
    std::vector<postmine::TokenStream> out;
    std::uniform_int_distribution<std::size_t> len(0, max_len), term(0, terms - 1);
    for (std::size_t d = 0; d < docs; ++d) {
        postmine::TokenStream s;
        s.post_id = "d" + std::to_string(d);
        const auto n = len(rng);
        for (std::size_t i = 0; i < n; ++i) s.tokens.push_back("t" + std::to_string(term(rng)));
        out.push_back(std::move(s));
    }
    return out;
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("postmine-" + tag + "-" + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace support
