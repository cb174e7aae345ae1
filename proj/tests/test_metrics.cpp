#include "support.hpp"

#include "postmine/error.hpp"
#include "postmine/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace postmine;
using support::make_post;

TEST_CASE("weighting") {
    CHECK(weighting(make_post("a", "x", 1, 0, 0)) == 0);
    CHECK(weighting(make_post("a", "x", 1, 12, 53)) == 77);
    CHECK(weighting(make_post("a", "x", 1, 5, 0)) == 10);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> u(0, 1000000);
    for (int i = 0; i < 200; ++i) {
        const auto f1 = u(rng), r1 = u(rng), f2 = u(rng), r2 = u(rng);
        CHECK(weighting(make_post("a", "x", 1, r1 + r2, f1 + f2)) ==
              weighting(make_post("a", "x", 1, r1, f1)) + weighting(make_post("b", "x", 1, r2, f2)));
    }
}

TEST_CASE("indicator") {
    CHECK(indicator(make_post("a", "x", 1, 0, 1)) == Rational(1));
    CHECK(indicator(make_post("a", "x", 11257, 12, 53)) == Rational(77, 11257));
    CHECK(format_fixed(indicator(make_post("a", "x", 11257, 12, 53)), 6) == "0.006840");
    CHECK_THROWS_AS(indicator(make_post("a", "x", 0, 1, 1)), UndefinedIndicatorError);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> u(0, 10000), f(1, 10000), k(1, 50);
    for (int i = 0; i < 200; ++i) {
        const auto fav = u(rng), rt = u(rng), fol = f(rng), s = k(rng);
        CHECK(indicator(make_post("a", "x", fol, rt, fav)) == indicator(make_post("a", "x", fol * s, rt * s, fav * s)));
    }
}

TEST_CASE("format_fixed rounds half up") {
    CHECK(format_fixed(Rational(3, 8)) == "0.37500000");
    CHECK(format_fixed(Rational(1, 3), 4) == "0.3333");
    CHECK(format_fixed(Rational(2, 3), 4) == "0.6667");
    CHECK(format_fixed(Rational(1, 8), 2) == "0.13");
    CHECK(format_fixed(Rational(5), 2) == "5.00");
}

TEST_CASE("influence records skip zero followers") {
    const auto c = support::make_corpus({make_post("1", "x", 10, 1, 1), make_post("2", "x", 0, 3, 3),
                                         make_post("3", "x", 4, 0, 2)});
    const auto r = influence_records(c);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[1].indicator == Rational(1, 2));
    CHECK(r.skipped == std::vector<std::string>{"2"});
    CHECK(skipped_posts_table(r.skipped) == "post_id,reason\n2,zero_followers\n");
}

TEST_CASE("rank_influencers") {
    SUBCASE("single post") {
        const auto r = rank_influencers(support::make_corpus({make_post("1", "x", 2, 0, 1)}), 10);
        REQUIRE(r.size() == 1);
        CHECK(r[0].score == Rational(1, 2));
        CHECK(ranking_table(r) == "rank,author,score,post_count,aggregation\n1,someone,0.50000000,1,mean\n");
    }
    SUBCASE("ties go to the smaller handle") {
        const auto r = rank_influencers(
            support::make_corpus({make_post("1", "x", 4, 1, 0, {}, "zeta"), make_post("2", "x", 2, 0, 1, {}, "alpha")}), 10);
        REQUIRE(r.size() == 2);
        CHECK(r[0].author == "alpha");
        CHECK(r[1].author == "zeta");
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(rank_influencers(Corpus{}, 3), ArgumentError);
        CHECK_THROWS_AS(rank_influencers(support::make_corpus({make_post("1", "x")}), 0), ArgumentError);
    }
    SUBCASE("brute-force aggregation and order invariance") {
        std::mt19937_64 rng(11);
        for (int round = 0; round < 10; ++round) {
            auto c = support::random_corpus(rng, 120);
            for (const auto agg : {Aggregation::mean, Aggregation::max, Aggregation::sum}) {
                // per-author oracle by plain cross-multiplied comparison
                std::map<std::string, std::vector<Rational>> per;
                for (const auto& p : c.posts()) {
                    if (p.followers > 0) per[p.author].push_back(Rational(p.favorites + 2 * p.retweets, p.followers));
                }
                std::vector<std::pair<std::string, Rational>> expected;
                for (const auto& [a, v] : per) {
                    Rational s = 0, m = v[0];
                    for (const auto& x : v) {
                        s += x;
                        m = std::max(m, x);
                    }
                    expected.emplace_back(a, agg == Aggregation::sum ? s : agg == Aggregation::max ? m : s / Rational(v.size()));
                }
                std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) {
                    return x.second != y.second ? x.second > y.second : x.first < y.first;
                });
                const auto got = rank_influencers(c, 1000, agg);
                REQUIRE(got.size() == expected.size());
                for (std::size_t i = 0; i < got.size(); ++i) {
                    CHECK(got[i].author == expected[i].first);
                    CHECK(got[i].score == expected[i].second);
                }
                auto posts = c.posts();
                std::shuffle(posts.begin(), posts.end(), rng);
                const auto shuffled = rank_influencers(support::make_corpus(posts), 5, agg);
                REQUIRE(shuffled.size() == 5);
                for (std::size_t i = 0; i < 5; ++i) CHECK(shuffled[i].author == got[i].author);
            }
        }
    }
}
