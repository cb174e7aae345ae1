#include "postmine/metrics.hpp"

#include "postmine/error.hpp"
#include "postmine/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace postmine {

std::int64_t weighting(const Post& p) { return p.favorites + 2 * p.retweets; }

Rational indicator(const Post& p) {
    if (p.followers <= 0) {
        throw UndefinedIndicatorError(fmt::format("post '{}': indicator undefined for zero followers", p.id));
    }
    return Rational(weighting(p), p.followers);
}

InfluenceRecords influence_records(const Corpus& c) {
    InfluenceRecords out;
    for (const auto& p : c.posts()) {
        if (p.followers == 0) {
            out.skipped.push_back(p.id);
            continue;
        }
        out.records.push_back({p.id, p.author, weighting(p), indicator(p)});
    }
    return out;
}

Aggregation parse_aggregation(std::string_view name) {
    if (name == "mean") return Aggregation::mean;
    if (name == "max") return Aggregation::max;
    if (name == "sum") return Aggregation::sum;
    throw ArgumentError(fmt::format("unknown aggregation '{}'", name));
}

std::string_view to_string(Aggregation a) {
    switch (a) {
        case Aggregation::mean: return "mean";
        case Aggregation::max: return "max";
        case Aggregation::sum: return "sum";
    }
    return "mean";
}

std::vector<AuthorScore> rank_influencers(const Corpus& c, std::size_t n, Aggregation aggregation) {
    if (n == 0) throw ArgumentError("rank_influencers: n must be positive");
    if (c.empty()) throw ArgumentError("rank_influencers: corpus is empty");

    struct Acc {
        Rational sum;
        Rational max;
        std::size_t count = 0;
    };
    std::map<std::string, Acc> by_author;
    for (const auto& r : influence_records(c).records) {
        auto& acc = by_author[r.author];
        acc.sum += r.indicator;
        if (acc.count == 0 || r.indicator > acc.max) acc.max = r.indicator;
        ++acc.count;
    }

    std::vector<AuthorScore> scores;
    scores.reserve(by_author.size());
    for (auto& [author, acc] : by_author) {
        Rational score;
        switch (aggregation) {
            case Aggregation::mean: score = acc.sum / acc.count; break;
            case Aggregation::max: score = acc.max; break;
            case Aggregation::sum: score = acc.sum; break;
        }
        scores.push_back({author, std::move(score), acc.count, aggregation});
    }
    std::sort(scores.begin(), scores.end(), [](const AuthorScore& a, const AuthorScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.author < b.author;
    });
    if (scores.size() > n) scores.resize(n);
    return scores;
}

std::string format_fixed(const Rational& r, int places) {
    using boost::multiprecision::cpp_int;
    const bool negative = r < 0;
    const cpp_int num = abs(numerator(r));
    const cpp_int den = denominator(r);
    cpp_int scale = 1;
    for (int k = 0; k < places; ++k) scale *= 10;
    const cpp_int scaled = (num * scale * 2 + den) / (den * 2);
    const std::string whole = cpp_int(scaled / scale).str();
    std::string frac = cpp_int(scaled % scale).str();
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    std::string out = negative && scaled != 0 ? "-" : "";
    out += whole;
    if (places > 0) out += "." + frac;
    return out;
}

std::string ranking_table(const std::vector<AuthorScore>& ranking) {
    std::string out = "rank,author,score,post_count,aggregation\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& s = ranking[i];
        out += fmt::format("{},{},{},{},{}\n", i + 1, io::csv_field(s.author), format_fixed(s.score, 8),
                           s.post_count, to_string(s.aggregation));
    }
    return out;
}

std::string skipped_posts_table(const std::vector<std::string>& skipped) {
    std::string out = "post_id,reason\n";
    for (const auto& id : skipped) out += fmt::format("{},zero_followers\n", io::csv_field(id));
    return out;
}

}  // namespace postmine
