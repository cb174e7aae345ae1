#include "postmine/pipeline.hpp"

#include "postmine/bundled.hpp"
#include "postmine/io.hpp"
#include "postmine/rng.hpp"
#include "postmine/sentiment.hpp"
#include "postmine/tdm.hpp"
#include "postmine/unicode.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <chrono>
#include <functional>
#include <map>

namespace postmine {

namespace fs = std::filesystem;

PipelineConfig PipelineConfig::defaults() {
    PipelineConfig cfg;
    cfg.keywords = bundled_path("keywords/default.conf");
    cfg.lexicon_positive = bundled_path("lexicon/positive-words.txt");
    cfg.lexicon_negative = bundled_path("lexicon/negative-words.txt");
    return cfg;
}

LdaConfig PipelineConfig::lda_config() const {
    LdaConfig lda = LdaConfig::defaults(lda_topics, derive_seed(seed, "lda"));
    if (lda_alpha) lda.alpha = *lda_alpha;
    lda.beta = lda_beta;
    lda.iterations = lda_iterations;
    lda.burn_in = lda_burn_in;
    lda.average_samples = lda_average_samples;
    return lda;
}

namespace {

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, value));
    }
    return v;
}

double parse_double(std::string_view key, std::string_view value) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, value));
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    const auto v = lowercase_ascii(value);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, value));
}

std::vector<std::string> parse_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string_view::npos) comma = value.size();
        const auto item = io::trim(value.substr(start, comma - start));
        if (!item.empty()) out.emplace_back(item);
        start = comma + 1;
    }
    return out;
}

fs::path parse_path(std::string_view value, const fs::path& base_dir) {
    constexpr std::string_view prefix = "bundled:";
    if (value.starts_with(prefix)) return bundled_path(value.substr(prefix.size()));
    fs::path p{std::string(value)};
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return p.lexically_normal();
}

// A bare date means the first millisecond of the day for a range start and
// the last one for a range end.
Timestamp parse_bound(std::string_view key, std::string_view value, bool is_end) {
    try {
        if (value.size() == 10) {
            const Timestamp day = parse_timestamp(fmt::format("{}T00:00:00Z", value));
            return is_end ? day + std::chrono::days{1} - std::chrono::milliseconds{1} : day;
        }
        return parse_timestamp(value);
    } catch (const ParseError& e) {
        throw ConfigError(fmt::format("{}: {}", key, e.what()));
    }
}

template <typename F>
auto wrap_config(std::string_view key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(fmt::format("{}: {}", key, e.what()));
    }
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace

void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view raw_value, const fs::path& base_dir) {
    const std::string_view value = io::trim(raw_value);
    const std::string k(key);
    if (k == "input") cfg.input = parse_path(value, base_dir);
    else if (k == "input_format") cfg.input_format = wrap_config(key, [&] { return parse_input_format(value); });
    else if (k == "date_start") cfg.date_start = value.empty() ? std::nullopt : std::optional(parse_bound(key, value, false));
    else if (k == "date_end") cfg.date_end = value.empty() ? std::nullopt : std::optional(parse_bound(key, value, true));
    else if (k == "keywords") cfg.keywords = parse_path(value, base_dir);
    else if (k == "stopword_languages") {
        const auto langs = parse_list(value);
        cfg.stopword_languages = std::set<std::string>(langs.begin(), langs.end());
    }
    else if (k == "lexicon_positive") cfg.lexicon_positive = parse_path(value, base_dir);
    else if (k == "lexicon_negative") cfg.lexicon_negative = parse_path(value, base_dir);
    else if (k == "rank_top_n") cfg.rank_top_n = parse_unsigned(key, value);
    else if (k == "rank_aggregation") cfg.rank_aggregation = wrap_config(key, [&] { return parse_aggregation(value); });
    else if (k == "freq_top_n") cfg.freq_top_n = parse_unsigned(key, value);
    else if (k == "assoc_anchors") cfg.assoc_anchors = parse_list(value);
    else if (k == "min_corr") cfg.min_corr = parse_double(key, value);
    else if (k == "max_sparsity") cfg.max_sparsity = parse_double(key, value);
    else if (k == "distance_metric") cfg.distance_metric = wrap_config(key, [&] { return parse_metric(value); });
    else if (k == "linkage") cfg.linkage = wrap_config(key, [&] { return parse_linkage(value); });
    else if (k == "cluster_k") cfg.cluster_k = parse_unsigned(key, value);
    else if (k == "lda_topics") cfg.lda_topics = parse_unsigned(key, value);
    else if (k == "lda_alpha") cfg.lda_alpha = value.empty() ? std::nullopt : std::optional(parse_double(key, value));
    else if (k == "lda_beta") cfg.lda_beta = parse_double(key, value);
    else if (k == "lda_iterations") cfg.lda_iterations = parse_unsigned(key, value);
    else if (k == "lda_burn_in") cfg.lda_burn_in = parse_unsigned(key, value);
    else if (k == "lda_average_samples") cfg.lda_average_samples = parse_bool(key, value);
    else if (k == "topic_top_n") cfg.topic_top_n = parse_unsigned(key, value);
    else if (k == "seed") cfg.seed = parse_unsigned(key, value);
    else if (k == "output_dir") cfg.output_dir = parse_path(value, base_dir);
    else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
}

PipelineConfig parse_config(std::string_view content, const fs::path& base_dir) {
    PipelineConfig cfg = PipelineConfig::defaults();
    for (const auto& [number, raw] : io::lines(content)) {
        const auto line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", number));
        }
        const auto key = io::trim(line.substr(0, eq));
        try {
            apply_setting(cfg, key, line.substr(eq + 1), base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {}", number, e.what()));
        }
    }
    return cfg;
}

PipelineConfig load_config(const fs::path& path) {
    std::string content;
    try {
        content = io::read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(content, path.parent_path());
}

std::vector<std::pair<std::string, std::string>> config_snapshot(const PipelineConfig& cfg) {
    std::string langs;
    for (const auto& l : cfg.stopword_languages) langs += (langs.empty() ? "" : ",") + l;
    std::string anchors;
    for (const auto& a : cfg.assoc_anchors) anchors += (anchors.empty() ? "" : ",") + a;
    return {
        {"input", cfg.input.string()},
        {"input_format", std::string(to_string(cfg.input_format))},
        {"date_start", cfg.date_start ? format_timestamp(*cfg.date_start) : ""},
        {"date_end", cfg.date_end ? format_timestamp(*cfg.date_end) : ""},
        {"keywords", cfg.keywords.string()},
        {"stopword_languages", langs},
        {"lexicon_positive", cfg.lexicon_positive.string()},
        {"lexicon_negative", cfg.lexicon_negative.string()},
        {"rank_top_n", std::to_string(cfg.rank_top_n)},
        {"rank_aggregation", std::string(to_string(cfg.rank_aggregation))},
        {"freq_top_n", std::to_string(cfg.freq_top_n)},
        {"assoc_anchors", anchors},
        {"min_corr", format_double(cfg.min_corr)},
        {"max_sparsity", format_double(cfg.max_sparsity)},
        {"distance_metric", std::string(to_string(cfg.distance_metric))},
        {"linkage", std::string(to_string(cfg.linkage))},
        {"cluster_k", std::to_string(cfg.cluster_k)},
        {"lda_topics", std::to_string(cfg.lda_topics)},
        {"lda_alpha", format_double(cfg.lda_config().alpha)},
        {"lda_beta", format_double(cfg.lda_beta)},
        {"lda_iterations", std::to_string(cfg.lda_iterations)},
        {"lda_burn_in", std::to_string(cfg.lda_burn_in)},
        {"lda_average_samples", cfg.lda_average_samples ? "true" : "false"},
        {"topic_top_n", std::to_string(cfg.topic_top_n)},
        {"seed", std::to_string(cfg.seed)},
    };
}

namespace {

void require_file(std::string_view key, const fs::path& p) {
    if (p.empty()) throw ConfigError(fmt::format("{} is not set", key));
    if (!fs::is_regular_file(p)) throw ConfigError(fmt::format("{}: file '{}' does not exist", key, p.string()));
}

void validate_common(const PipelineConfig& cfg) {
    require_file("keywords", cfg.keywords);
    require_file("lexicon_positive", cfg.lexicon_positive);
    require_file("lexicon_negative", cfg.lexicon_negative);
    try {
        load_keyword_sets(cfg.keywords);
    } catch (const Error& e) {
        throw ConfigError(fmt::format("keywords: {}", e.what()));
    }
    try {
        load_lexicon(cfg.lexicon_positive, cfg.lexicon_negative);
    } catch (const Error& e) {
        throw ConfigError(fmt::format("lexicon: {}", e.what()));
    }
    for (const auto& lang : cfg.stopword_languages) {
        if (!fs::is_regular_file(bundled_path(fmt::format("stopwords/{}.txt", lang)))) {
            throw ConfigError(fmt::format("stopword_languages: no bundled list for '{}'", lang));
        }
    }
    if (cfg.date_start && cfg.date_end && *cfg.date_start > *cfg.date_end) {
        throw ConfigError("date_start is after date_end");
    }
    if (cfg.rank_top_n == 0) throw ConfigError("rank_top_n must be positive");
    if (cfg.freq_top_n == 0) throw ConfigError("freq_top_n must be positive");
    if (cfg.topic_top_n == 0) throw ConfigError("topic_top_n must be positive");
    if (!(cfg.min_corr >= 0.0 && cfg.min_corr <= 1.0)) throw ConfigError("min_corr must lie in [0, 1]");
    if (!(cfg.max_sparsity > 0.0 && cfg.max_sparsity <= 1.0)) throw ConfigError("max_sparsity must lie in (0, 1]");
    if (cfg.distance_metric == Metric::precomputed) throw ConfigError("distance_metric cannot be 'precomputed'");
    if (cfg.linkage == Linkage::ward && cfg.distance_metric != Metric::euclidean) {
        throw ConfigError("ward linkage requires distance_metric = euclidean");
    }
    try {
        cfg.lda_config().validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    if (cfg.output_dir.empty()) throw ConfigError("output_dir is not set");
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec || !fs::is_directory(cfg.output_dir)) {
        throw ConfigError(fmt::format("output_dir '{}' cannot be created", cfg.output_dir.string()));
    }
    const fs::path probe = cfg.output_dir / ".write-probe";
    try {
        io::write_file(probe, "");
        fs::remove(probe);
    } catch (const IoError&) {
        throw ConfigError(fmt::format("output_dir '{}' is not writable", cfg.output_dir.string()));
    }
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
    require_file("input", cfg.input);
    validate_common(cfg);
}

StageError::StageError(std::string stage, const std::exception& cause)
    : Error(fmt::format("stage '{}' failed: {}", stage, cause.what())), stage_(std::move(stage)) {
    if (const auto* e = dynamic_cast<const Error*>(&cause)) cause_kind_ = e->kind();
    else cause_kind_ = "internal";
}

std::string retained_ratio(std::size_t retained, std::size_t loaded) {
    if (loaded == 0) return "0.0000";
    return io::format_ratio(retained, loaded, 4);
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["seed"] = seed;
    j["lda_seed"] = lda_seed;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) c[k] = v;
    j["config"] = c;
    nlohmann::ordered_json st = nlohmann::ordered_json::array();
    for (const auto& s : stages) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["applied"] = s.applied;
        e["before"] = s.before ? nlohmann::ordered_json(*s.before) : nlohmann::ordered_json(nullptr);
        e["after"] = s.after ? nlohmann::ordered_json(*s.after) : nlohmann::ordered_json(nullptr);
        st.push_back(e);
    }
    j["stages"] = st;
    nlohmann::ordered_json lin = nlohmann::ordered_json::array();
    for (const auto& l : lineage) lin.push_back({{"stage", l.description}, {"before", l.before}, {"after", l.after}});
    j["lineage"] = lin;
    j["loaded"] = loaded;
    j["retained"] = retained;
    j["retained_fraction"] = fmt::format("{}/{}", retained, loaded);
    j["retained_ratio"] = retained_ratio;
    return j.dump(2) + "\n";
}

namespace {

// Stage bodies shared by the full run and the single-stage commands. Each
// writes its artifacts into `dir`.

void write_ranking(const Corpus& c, const PipelineConfig& cfg, const fs::path& dir) {
    const auto ranking = rank_influencers(c, cfg.rank_top_n, cfg.rank_aggregation);
    io::write_file(dir / artifacts::ranking, ranking_table(ranking));
    io::write_file(dir / artifacts::skipped, skipped_posts_table(influence_records(c).skipped));
}

std::vector<TokenStream> write_tokens(const Corpus& c, const PipelineConfig& cfg, const fs::path& dir) {
    PreprocessConfig pre;
    pre.languages = cfg.stopword_languages;
    auto streams = preprocess(c, pre);
    write_token_streams(streams, dir / artifacts::tokens);
    return streams;
}

TermDocumentMatrix write_tdm(std::span<const TokenStream> streams, const fs::path& dir) {
    auto m = build_tdm(streams);
    io::write_file(dir / artifacts::tdm, coordinate_table(m));
    return m;
}

void write_frequencies(const TermDocumentMatrix& m, const PipelineConfig& cfg, const fs::path& dir) {
    io::write_file(dir / artifacts::frequencies, frequency_table(term_frequencies(m, cfg.freq_top_n)));
}

void write_associations(const TermDocumentMatrix& m, const PipelineConfig& cfg, const fs::path& dir) {
    std::vector<AssociationList> lists;
    for (const auto& anchor : cfg.assoc_anchors) {
        lists.push_back(associations(m, unicode::fold(anchor), cfg.min_corr));
    }
    io::write_file(dir / artifacts::associations, association_table(lists));
}


void write_sentiment(std::span<const TokenStream> streams, const PipelineConfig& cfg, const fs::path& dir) {
    const auto lex = load_lexicon(cfg.lexicon_positive, cfg.lexicon_negative);
    const auto result = corpus_polarity(streams, lex);
    io::write_file(dir / artifacts::polarity, polarity_table(result.documents));
    io::write_file(dir / artifacts::polarity_summary, distribution_table(result.distribution));
}

void write_clusters(const TermDocumentMatrix& m, const PipelineConfig& cfg, const fs::path& dir) {
    const auto kept = remove_sparse_terms(m, cfg.max_sparsity);
    const auto tree = agglomerate(distance_matrix(kept, cfg.distance_metric), cfg.linkage);
    io::write_file(dir / artifacts::newick, to_newick(tree));
    io::write_file(dir / artifacts::merges, merge_table(tree));
    if (cfg.cluster_k > 0) io::write_file(dir / artifacts::clusters, cluster_table(tree, cut(tree, cfg.cluster_k)));
}

TopicModel write_topics(std::span<const TokenStream> streams, const PipelineConfig& cfg, const fs::path& dir) {
    auto model = fit_lda(streams, cfg.lda_config());
    io::write_file(dir / artifacts::phi, phi_table(model));
    io::write_file(dir / artifacts::theta, theta_table(model));
    io::write_file(dir / artifacts::topic_terms, topic_terms_table(model, cfg.topic_top_n));
    io::write_file(dir / artifacts::topic_assignments, assignments_table(model));
    return model;
}

void write_topic_polarity(const TopicModel& model, std::span<const PolarityResult> polarities, const fs::path& dir) {
    io::write_file(dir / artifacts::topic_polarity, topic_polarity_table(topic_polarity(model, polarities)));
}

class StageRunner {
public:
    template <typename F>
    auto operator()(std::string name, F&& f) {
        StageRecord rec;
        rec.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        auto finish = [&] {
            rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            records.push_back(rec);
        };
        try {
            if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
                f();
                finish();
            } else {
                auto result = f();
                finish();
                return result;
            }
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e);
        }
    }

    /// Record counts on the most recent stage.
    void counts(std::size_t before, std::size_t after, bool applied = true) {
        records.back().before = before;
        records.back().after = after;
        records.back().applied = applied;
    }

    std::vector<StageRecord> records;
};

Corpus date_stage(StageRunner& run, const Corpus& loaded, const PipelineConfig& cfg) {
    Corpus dated = run("date_filter", [&] {
        if (!cfg.date_start && !cfg.date_end) return loaded;
        return filter_by_date(loaded, cfg.date_start.value_or(Timestamp::min()), cfg.date_end.value_or(Timestamp::max()));
    });
    run.counts(loaded.size(), dated.size(), cfg.date_start || cfg.date_end);
    return dated;
}

Corpus keyword_stage(StageRunner& run, const Corpus& dated, const PipelineConfig& cfg) {
    Corpus filtered = run("keyword_filter", [&] { return filter_by_keywords(dated, load_keyword_sets(cfg.keywords)); });
    run.counts(dated.size(), filtered.size());
    return filtered;
}

fs::path require_artifact(const PipelineConfig& cfg, const char* name) {
    const fs::path p = cfg.output_dir / name;
    if (!fs::is_regular_file(p)) {
        throw DependencyError(fmt::format("missing artifact '{}' in '{}'; run the command that produces it first", name,
                                          cfg.output_dir.string()));
    }
    return p;
}

Corpus read_filtered(const PipelineConfig& cfg) {
    const auto path = require_artifact(cfg, artifacts::corpus);
    const auto lineage = require_artifact(cfg, artifacts::lineage);
    return with_lineage(load_corpus(path, InputFormat::record_per_line), lineage);
}

std::vector<TokenStream> read_tokens(const PipelineConfig& cfg) {
    return read_token_streams(require_artifact(cfg, artifacts::tokens));
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);

    const fs::path staging = cfg.output_dir / ".partial";
    fs::remove_all(staging);
    fs::create_directories(staging);

    RunManifest manifest;
    manifest.config = config_snapshot(cfg);
    manifest.seed = cfg.seed;
    manifest.lda_seed = cfg.lda_config().seed;
    try {
        StageRunner run;
        const Corpus loaded = run("load", [&] { return load_corpus(cfg.input, cfg.input_format); });
        run.counts(loaded.size(), loaded.size());
        const Corpus dated = date_stage(run, loaded, cfg);
        const Corpus filtered = keyword_stage(run, dated, cfg);
        write_record_lines(filtered, staging / artifacts::corpus);
        write_lineage(filtered, staging / artifacts::lineage);

        run("rank", [&] { write_ranking(filtered, cfg, staging); });
        const auto streams = run("preprocess", [&] { return write_tokens(filtered, cfg, staging); });
        const auto tdm = run("tdm", [&] { return write_tdm(streams, staging); });
        run("freq_assoc", [&] {
            write_frequencies(tdm, cfg, staging);
            write_associations(tdm, cfg, staging);
        });
        const auto polarities = run("sentiment", [&] {
            write_sentiment(streams, cfg, staging);
            return parse_polarity_table(io::read_file(staging / artifacts::polarity));
        });
        run("cluster", [&] { write_clusters(tdm, cfg, staging); });
        const auto model = run("lda", [&] { return write_topics(streams, cfg, staging); });
        run("topic_polarity", [&] { write_topic_polarity(model, polarities, staging); });

        manifest.stages = std::move(run.records);
        manifest.lineage = filtered.lineage();
        manifest.loaded = loaded.size();
        manifest.retained = filtered.size();
        manifest.retained_ratio = retained_ratio(filtered.size(), loaded.size());
        io::write_file(staging / artifacts::manifest, manifest.to_json());
    } catch (...) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw;
    }

    for (const auto& entry : fs::directory_iterator(staging)) {
        fs::rename(entry.path(), cfg.output_dir / entry.path().filename());
    }
    fs::remove(staging);
    return manifest;
}

void command_ingest(const PipelineConfig& cfg) {
    validate_config(cfg);
    StageRunner run;
    const Corpus loaded = run("load", [&] { return load_corpus(cfg.input, cfg.input_format); });
    write_record_lines(loaded, cfg.output_dir / artifacts::ingested);
    write_lineage(loaded, cfg.output_dir / artifacts::ingested_lineage);
}

void command_filter(const PipelineConfig& cfg) {
    validate_common(cfg);
    const auto path = require_artifact(cfg, artifacts::ingested);
    const auto lineage = require_artifact(cfg, artifacts::ingested_lineage);
    StageRunner run;
    const Corpus loaded = run("load", [&] { return with_lineage(load_corpus(path, InputFormat::record_per_line), lineage); });
    const Corpus filtered = keyword_stage(run, date_stage(run, loaded, cfg), cfg);
    write_record_lines(filtered, cfg.output_dir / artifacts::corpus);
    write_lineage(filtered, cfg.output_dir / artifacts::lineage);
}

void command_rank(const PipelineConfig& cfg) {
    validate_common(cfg);
    const Corpus c = read_filtered(cfg);
    StageRunner run;
    run("rank", [&] { write_ranking(c, cfg, cfg.output_dir); });
}

void command_freq(const PipelineConfig& cfg) {
    validate_common(cfg);
    const Corpus c = read_filtered(cfg);
    StageRunner run;
    const auto streams = run("preprocess", [&] { return write_tokens(c, cfg, cfg.output_dir); });
    const auto tdm = run("tdm", [&] { return write_tdm(streams, cfg.output_dir); });
    run("freq_assoc", [&] { write_frequencies(tdm, cfg, cfg.output_dir); });
}

void command_assoc(const PipelineConfig& cfg) {
    validate_common(cfg);
    const auto streams = read_tokens(cfg);
    StageRunner run;
    run("freq_assoc", [&] { write_associations(build_tdm(streams), cfg, cfg.output_dir); });
}

void command_sentiment(const PipelineConfig& cfg) {
    validate_common(cfg);
    const auto streams = read_tokens(cfg);
    StageRunner run;
    run("sentiment", [&] { write_sentiment(streams, cfg, cfg.output_dir); });
}

void command_cluster(const PipelineConfig& cfg) {
    validate_common(cfg);
    const auto streams = read_tokens(cfg);
    StageRunner run;
    run("cluster", [&] { write_clusters(build_tdm(streams), cfg, cfg.output_dir); });
}

void command_topics(const PipelineConfig& cfg) {
    validate_common(cfg);
    const auto streams = read_tokens(cfg);
    const auto polarity_path = require_artifact(cfg, artifacts::polarity);
    StageRunner run;
    const auto model = run("lda", [&] { return write_topics(streams, cfg, cfg.output_dir); });
    run("topic_polarity", [&] {
        write_topic_polarity(model, parse_polarity_table(io::read_file(polarity_path)), cfg.output_dir);
    });
}

}  // namespace postmine
