#include "oracles.hpp"
#include "support.hpp"

#include "postmine/error.hpp"
#include "postmine/tdm.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace postmine;

namespace {

std::vector<double> row(const TermDocumentMatrix& m, std::size_t t) {
    std::vector<double> out(m.doc_count());
    for (std::size_t d = 0; d < m.doc_count(); ++d) out[d] = static_cast<double>(m.count(t, d));
    return out;
}

}  // namespace

TEST_CASE("build_tdm") {
    const std::vector<TokenStream> one = {{"d1", {"a", "b", "a"}}};
    const auto m = build_tdm(one);
    CHECK(m.vocabulary() == std::vector<std::string>{"a", "b"});
    CHECK(m.count(0, 0) == 2);
    CHECK(m.count(1, 0) == 1);
    CHECK(m.total() == 3);
    CHECK(coordinate_table(m) == "term,doc_id,count\na,d1,2\nb,d1,1\n");

    const auto empty = build_tdm(std::vector<TokenStream>{});
    CHECK(empty.term_count() == 0);
    CHECK(empty.total() == 0);

    const std::vector<TokenStream> dup = {{"x", {"a"}}, {"x", {"b"}}};
    CHECK_THROWS_AS(build_tdm(dup), ValidationError);

    std::mt19937_64 rng(1);
    const auto streams = support::random_streams(rng, 5, 7, 9);
    std::map<std::pair<std::string, std::string>, long> recount;
    long mass = 0;
    for (const auto& s : streams) {
        for (const auto& t : s.tokens) ++recount[{t, s.post_id}];
        mass += static_cast<long>(s.tokens.size());
    }
    const auto r = build_tdm(streams);
    CHECK(r.total() == mass);
    CHECK(static_cast<long>(r.counts().nonZeros()) == static_cast<long>(recount.size()));
    for (const auto& [key, n] : recount) {
        CHECK(r.count(*r.term_index(key.first), std::stoul(key.second.substr(1))) == n);
    }
}

TEST_CASE("term_frequencies") {
    const std::vector<TokenStream> one = {{"d1", {"a", "b", "a"}}};
    const auto f = term_frequencies(build_tdm(one), 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0].term == "a");
    CHECK(f[0].count == 2);
    CHECK(f[1].count == 1);

    const std::vector<TokenStream> tie = {{"d1", {"z", "z", "z", "m", "m", "m", "q"}}};
    const auto t = term_frequencies(build_tdm(tie), 10);
    REQUIRE(t.size() == 3);
    CHECK(t[0].term == "m");
    CHECK(t[1].term == "z");
    CHECK(frequency_table(t) == "term,count\nm,3\nz,3\nq,1\n");

    std::mt19937_64 rng(2);
    const auto streams = support::random_streams(rng, 100, 40, 15);
    std::map<std::string, long> flat;
    for (const auto& s : streams)
        for (const auto& w : s.tokens) ++flat[w];
    const auto all = term_frequencies(build_tdm(streams), 1000);
    CHECK(all.size() == flat.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].count == flat[all[i].term]);
        if (i > 0) {
            CHECK((all[i - 1].count > all[i].count || (all[i - 1].count == all[i].count && all[i - 1].term < all[i].term)));
        }
    }
}

TEST_CASE("associations") {
    SUBCASE("identical vectors correlate perfectly") {
        const std::vector<TokenStream> s = {{"1", {"a", "b"}}, {"2", {"a", "a", "b", "b"}}, {"3", {"c"}}};
        const auto l = associations(build_tdm(s), "a", 0.0);
        REQUIRE_FALSE(l.entries.empty());
        CHECK(l.entries[0].term == "b");
        CHECK(l.entries[0].correlation == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("anti-correlated vectors are excluded") {
        const std::vector<TokenStream> s = {{"1", {"a"}}, {"2", {"b"}}, {"3", {"a"}}};
        const auto m = build_tdm(s);
        CHECK(*term_correlation(m, 0, 1) == doctest::Approx(-1.0));
        CHECK(associations(m, "a", 0.0).entries.empty());
    }
    SUBCASE("errors") {
        const std::vector<TokenStream> s = {{"1", {"a"}}, {"2", {"b"}}};
        const auto m = build_tdm(s);
        CHECK_THROWS_AS(associations(m, "zzz"), NotFoundError);
        CHECK_THROWS_AS(associations(m, "a", 1.5), ArgumentError);
        const std::vector<TokenStream> single = {{"1", {"a", "b"}}};
        CHECK_THROWS_AS(associations(build_tdm(single), "a"), InsufficientDataError);
    }
    SUBCASE("brute-force Pearson, symmetry") {
        std::mt19937_64 rng(4);
        const auto m = build_tdm(support::random_streams(rng, 30, 20, 12));
        for (std::size_t a = 0; a < m.term_count(); ++a) {
            const auto list = associations(m, m.vocabulary()[a], 0.0);
            for (const auto& e : list.entries) {
                const auto b = *m.term_index(e.term);
                CHECK(std::abs(e.correlation - oracle::pearson(row(m, a), row(m, b))) < 1e-9);
            }
            for (std::size_t b = 0; b < m.term_count(); ++b) {
                const auto ab = term_correlation(m, a, b), ba = term_correlation(m, b, a);
                REQUIRE(ab.has_value() == ba.has_value());
                if (ab) CHECK(std::abs(*ab - *ba) < 1e-12);
            }
        }
        CHECK(association_table(std::vector<AssociationList>{{"a", {{"b", 0.5}}}}) == "anchor,term,correlation\na,b,0.500000\n");
    }
}

TEST_CASE("remove_sparse_terms") {
    std::vector<TokenStream> s;
    for (int d = 0; d < 10; ++d) s.push_back({"d" + std::to_string(d), {"common", d == 0 ? "rare" : "common"}});
    const auto m = build_tdm(s);
    const auto same = remove_sparse_terms(m, 1.0);
    CHECK(same.vocabulary() == m.vocabulary());
    CHECK(same.total() == m.total());
    CHECK(remove_sparse_terms(m, 0.5).vocabulary() == std::vector<std::string>{"common"});
    CHECK_THROWS_AS(remove_sparse_terms(m, 0.0), ArgumentError);

    std::mt19937_64 rng(8);
    for (int round = 0; round < 20; ++round) {
        const auto r = build_tdm(support::random_streams(rng, 25, 30, 10));
        const double s_max = 0.3 + 0.05 * (round % 7);
        const auto kept = remove_sparse_terms(r, s_max);
        std::vector<std::string> expected;
        for (std::size_t t = 0; t < r.term_count(); ++t) {
            std::size_t df = 0;
            for (std::size_t d = 0; d < r.doc_count(); ++d) df += r.count(t, d) > 0;
            const double sparsity = 1.0 - static_cast<double>(df) / static_cast<double>(r.doc_count());
            if (sparsity <= s_max + 1e-12) expected.push_back(r.vocabulary()[t]);
        }
        CHECK(kept.vocabulary() == expected);
        for (std::size_t t = 0; t < kept.term_count(); ++t) {
            const auto orig = *r.term_index(kept.vocabulary()[t]);
            for (std::size_t d = 0; d < kept.doc_count(); ++d) CHECK(kept.count(t, d) == r.count(orig, d));
        }
    }
}
