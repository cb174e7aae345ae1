#pragma once

#include "postmine/corpus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace postmine {

using Rational = boost::multiprecision::cpp_rational;

/// favorites + 2 * retweets.
std::int64_t weighting(const Post& p);

/// weighting(p) / followers, exact. Throws UndefinedIndicatorError when
/// followers == 0.
Rational indicator(const Post& p);

struct InfluenceRecord {
    std::string post_id;
    std::string author;
    std::int64_t weighting = 0;
    Rational indicator;
};

struct InfluenceRecords {
    std::vector<InfluenceRecord> records;  // corpus order
    std::vector<std::string> skipped;      // ids of posts with followers == 0
};

InfluenceRecords influence_records(const Corpus& c);

enum class Aggregation { mean, max, sum };
Aggregation parse_aggregation(std::string_view name);
std::string_view to_string(Aggregation a);

struct AuthorScore {
    std::string author;
    Rational score;
    std::size_t post_count = 0;
    Aggregation aggregation = Aggregation::mean;
};

/// Top `n` authors by aggregated indicator; descending score, then ascending
/// handle. Posts with followers == 0 do not contribute.
std::vector<AuthorScore> rank_influencers(const Corpus& c, std::size_t n,
                                          Aggregation aggregation = Aggregation::mean);

/// Fixed-point rendering, round half up.
std::string format_fixed(const Rational& r, int places = 8);

/// `rank,author,score,post_count,aggregation`
std::string ranking_table(const std::vector<AuthorScore>& ranking);
/// `post_id,reason`
std::string skipped_posts_table(const std::vector<std::string>& skipped);

}  // namespace postmine
