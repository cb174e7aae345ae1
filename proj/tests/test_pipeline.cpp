#include "support.hpp"

#include "postmine/bundled.hpp"
#include "postmine/error.hpp"
#include "postmine/io.hpp"
#include "postmine/pipeline.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <map>

using namespace postmine;
namespace fs = std::filesystem;

namespace {

PipelineConfig fixture_config(const fs::path& out) {
    auto cfg = load_config(bundled_path("fixtures/pipeline.conf"));
    cfg.output_dir = out;
    return cfg;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = io::read_file(e.path());
    }
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(POSTMINE_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_config(
        "# comment\n"
        "input = posts.csv\n"
        "input_format = jsonl\n"
        "date_start = 2016-03-01\n"
        "date_end = 2017-02-28\n"
        "stopword_languages = es, it\n"
        "assoc_anchors = innovacion , startup\n"
        "linkage = ward\n"
        "lda_topics = 6\n"
        "lda_average_samples = yes\n"
        "keywords = bundled:keywords/default.conf\n",
        "/data");
    CHECK(cfg.input == fs::path("/data/posts.csv"));
    CHECK(cfg.input_format == InputFormat::record_per_line);
    CHECK(format_timestamp(*cfg.date_start) == "2016-03-01T00:00:00.000Z");
    CHECK(format_timestamp(*cfg.date_end) == "2017-02-28T23:59:59.999Z");
    CHECK(cfg.stopword_languages == std::set<std::string>{"es", "it"});
    CHECK(cfg.assoc_anchors == std::vector<std::string>{"innovacion", "startup"});
    CHECK(cfg.linkage == Linkage::ward);
    CHECK(cfg.lda_config().alpha == doctest::Approx(50.0 / 6));
    CHECK(cfg.lda_average_samples);
    CHECK(cfg.keywords == bundled_path("keywords/default.conf"));

    CHECK_THROWS_WITH_AS(parse_config("colour = blue\n", ""), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = -3\n", ""), ConfigError);
    CHECK_THROWS_AS(parse_config("linkage = median\n", ""), ConfigError);
    CHECK_THROWS_AS(parse_config("just words\n", ""), ConfigError);

    PipelineConfig o = cfg;
    apply_setting(o, "seed", "17", "");
    CHECK(o.seed == 17);
    CHECK(retained_ratio(3977, 22483) == "0.1769");
    CHECK(retained_ratio(72, 200) == "0.3600");
    CHECK(retained_ratio(1, 8) == "0.1250");
    CHECK(retained_ratio(1, 3) == "0.3333");
}

TEST_CASE("validation fails before any stage") {
    support::TempDir tmp("validate");
    auto cfg = fixture_config(tmp.path() / "out");
    cfg.lexicon_negative = tmp.path() / "nope.txt";
    CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("lexicon_negative"), ConfigError);
    CHECK(tree(tmp.path()).empty());

    cfg = fixture_config(tmp.path() / "out");
    cfg.linkage = Linkage::ward;
    cfg.distance_metric = Metric::cosine;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    cfg = fixture_config(tmp.path() / "out");
    cfg.lda_burn_in = cfg.lda_iterations;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    cfg = fixture_config(tmp.path() / "out");
    cfg.stopword_languages = {"fr"};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("full run on the bundled fixture") {
    support::TempDir tmp("run");
    const auto m = run_pipeline(fixture_config(tmp.path() / "a"));
    REQUIRE(m.stages.size() == 11);
    const std::vector<std::string> names = {"load", "date_filter", "keyword_filter", "rank", "preprocess", "tdm",
                                            "freq_assoc", "sentiment", "cluster", "lda", "topic_polarity"};
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(m.stages[i].name == names[i]);
    CHECK(m.loaded == 200);
    CHECK(m.retained == 72);
    CHECK(m.retained_ratio == "0.3600");
    CHECK(*m.stages[1].after == 180);
    for (std::size_t i = 0; i < 3; ++i) CHECK(*m.stages[i].after <= *m.stages[i].before);

    const auto files = tree(tmp.path() / "a");
    for (const char* f : {artifacts::corpus, artifacts::lineage, artifacts::ranking, artifacts::skipped,
                          artifacts::tokens, artifacts::tdm, artifacts::frequencies, artifacts::associations,
                          artifacts::polarity, artifacts::polarity_summary, artifacts::newick, artifacts::merges,
                          artifacts::clusters, artifacts::phi, artifacts::theta, artifacts::topic_terms,
                          artifacts::topic_assignments, artifacts::topic_polarity, artifacts::manifest}) {
        CHECK_MESSAGE(files.count(f) == 1, f);
    }
    CHECK(files.count(".partial/manifest.json") == 0);

    const auto j = nlohmann::json::parse(files.at(artifacts::manifest));
    CHECK(j["retained_ratio"] == "0.3600");
    CHECK(j["retained_fraction"] == "72/200");
    CHECK(j["stages"].size() == 11);
    CHECK(j["config"]["seed"] == "42");
    CHECK_FALSE(j["config"].contains("output_dir"));

    run_pipeline(fixture_config(tmp.path() / "b"));
    CHECK(tree(tmp.path() / "a") == tree(tmp.path() / "b"));

    auto other = fixture_config(tmp.path() / "c");
    other.seed = 43;
    run_pipeline(other);
    CHECK(tree(tmp.path() / "c").at(artifacts::topic_assignments) != files.at(artifacts::topic_assignments));
}

TEST_CASE("a failing stage leaves no partial output") {
    support::TempDir tmp("fail");
    auto cfg = fixture_config(tmp.path() / "out");
    cfg.assoc_anchors = {"entrepreneurship", "no-such-term"};
    try {
        run_pipeline(cfg);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "freq_assoc");
        CHECK(e.cause_kind() == "not-found");
    }
    CHECK(tree(tmp.path() / "out").empty());
}

TEST_CASE("subcommands chain through artifacts") {
    support::TempDir tmp("cmd");
    auto cfg = fixture_config(tmp.path());

    CHECK_THROWS_WITH_AS(command_topics(cfg), doctest::Contains(artifacts::tokens), DependencyError);
    CHECK_THROWS_WITH_AS(command_filter(cfg), doctest::Contains(artifacts::ingested), DependencyError);

    command_ingest(cfg);
    command_filter(cfg);
    command_rank(cfg);
    cfg.freq_top_n = 100000;
    command_freq(cfg);
    command_assoc(cfg);
    command_sentiment(cfg);
    command_cluster(cfg);
    command_topics(cfg);

    // freq with n beyond the vocabulary lists every term
    const auto freq = io::lines(io::read_file(tmp.path() / artifacts::frequencies));
    const auto tdm = io::read_file(tmp.path() / artifacts::tdm);
    std::set<std::string> terms;
    for (const auto& r : io::parse_csv(tdm)) {
        if (r.line > 1) terms.insert(r.fields[0]);
    }
    CHECK(freq.size() == terms.size() + 1);

    // the step-wise outputs agree with a full run
    support::TempDir full("cmdfull");
    run_pipeline(fixture_config(full.path()));
    for (const char* f : {artifacts::corpus, artifacts::ranking, artifacts::tokens, artifacts::tdm,
                          artifacts::associations, artifacts::polarity, artifacts::merges, artifacts::topic_terms,
                          artifacts::topic_polarity}) {
        CHECK_MESSAGE(io::read_file(tmp.path() / f) == io::read_file(full.path() / f), f);
    }

    cfg.assoc_anchors = {"entrepreneurship", "absentword"};
    try {
        command_assoc(cfg);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.cause_kind() == "not-found");
    }
}

TEST_CASE("command-line exit codes") {
    support::TempDir tmp("cli");
    const std::string conf = bundled_path("fixtures/pipeline.conf").string();
    const std::string out = (tmp.path() / "out").string();
    CHECK(run_cli("run -c " + conf + " -o " + out) == 0);
    CHECK(run_cli("run -c " + conf + " -o " + out + " --set lexicon_positive=/nonexistent") == 1);
    CHECK(run_cli("run -c " + conf + " -o " + out + " --set assoc_anchors=absentword") == 2);
    CHECK(run_cli("topics -o " + (tmp.path() / "empty").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);
}
