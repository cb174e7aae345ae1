#pragma once

#include "postmine/cluster.hpp"
#include "postmine/corpus.hpp"
#include "postmine/error.hpp"
#include "postmine/metrics.hpp"
#include "postmine/topics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace postmine {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Every key of the configuration file maps onto one field here.
struct PipelineConfig {
    std::filesystem::path input;
    InputFormat input_format = InputFormat::delimited;
    std::optional<Timestamp> date_start;
    std::optional<Timestamp> date_end;
    std::filesystem::path keywords;
    std::set<std::string> stopword_languages = {"en", "es", "it"};
    std::filesystem::path lexicon_positive;
    std::filesystem::path lexicon_negative;
    std::size_t rank_top_n = 20;
    Aggregation rank_aggregation = Aggregation::mean;
    std::size_t freq_top_n = 50;
    std::vector<std::string> assoc_anchors;
    double min_corr = 0.25;
    double max_sparsity = 0.95;
    Metric distance_metric = Metric::euclidean;
    Linkage linkage = Linkage::complete;
    std::size_t cluster_k = 0;  // 0: no flat cut
    std::size_t lda_topics = 4;
    std::optional<double> lda_alpha;  // default 50 / K
    double lda_beta = 0.01;
    std::size_t lda_iterations = 1000;
    std::size_t lda_burn_in = 200;
    bool lda_average_samples = false;
    std::size_t topic_top_n = 10;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;

    /// Default configuration referencing the bundled keyword, stopword and
    /// lexicon files. `input` and `output_dir` are left empty.
    static PipelineConfig defaults();

    LdaConfig lda_config() const;
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

/// `key = value` lines, '#' comments. Relative paths resolve against
/// `base_dir`; a `bundled:` prefix names a file shipped with the tool.
PipelineConfig parse_config(std::string_view content, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
/// Applies one `key=value` override on top of a parsed configuration.
void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir);
/// Canonical key/value listing; output_dir is omitted so that the snapshot
/// does not depend on where a run writes.
std::vector<std::pair<std::string, std::string>> config_snapshot(const PipelineConfig& cfg);

/// Checks referenced files, parameter ranges, and creates the output
/// directory. Throws ConfigError.
void validate_config(const PipelineConfig& cfg);

/// A failure inside a named stage.
class StageError : public Error {
public:
    StageError(std::string stage, const std::exception& cause);
    const char* kind() const noexcept override { return "stage"; }
    const std::string& stage() const noexcept { return stage_; }
    const std::string& cause_kind() const noexcept { return cause_kind_; }

private:
    std::string stage_;
    std::string cause_kind_;
};

struct StageRecord {
    std::string name;
    bool applied = true;
    std::optional<std::size_t> before;
    std::optional<std::size_t> after;
    double seconds = 0.0;  // wall clock; kept out of manifest.json
};

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<StageRecord> stages;
    std::vector<LineageEntry> lineage;
    std::size_t loaded = 0;
    std::size_t retained = 0;
    std::string retained_ratio;  // retained / loaded, 4 decimals
    std::string tool_version{kToolVersion};
    std::uint64_t seed = 0;
    std::uint64_t lda_seed = 0;

    std::string to_json() const;
};

/// retained / loaded rendered with 4 decimals (round half up).
std::string retained_ratio(std::size_t retained, std::size_t loaded);

/// Full run: load, date filter, keyword filter, ranking, preprocessing, TDM,
/// frequencies + associations, sentiment, clustering, LDA, topic polarity.
/// Outputs are staged and moved into cfg.output_dir only when every stage
/// succeeds.
RunManifest run_pipeline(const PipelineConfig& cfg);

/// Names of the files written into the output directory.
namespace artifacts {
inline constexpr const char* ingested = "ingested.jsonl";
inline constexpr const char* ingested_lineage = "ingested_lineage.csv";
inline constexpr const char* corpus = "corpus.jsonl";
inline constexpr const char* lineage = "lineage.csv";
inline constexpr const char* ranking = "ranking.csv";
inline constexpr const char* skipped = "skipped_posts.csv";
inline constexpr const char* tokens = "tokens.jsonl";
inline constexpr const char* tdm = "tdm.csv";
inline constexpr const char* frequencies = "frequencies.csv";
inline constexpr const char* associations = "associations.csv";
inline constexpr const char* polarity = "polarity.csv";
inline constexpr const char* polarity_summary = "polarity_summary.csv";
inline constexpr const char* newick = "dendrogram.nwk";
inline constexpr const char* merges = "merges.csv";
inline constexpr const char* clusters = "clusters.csv";
inline constexpr const char* phi = "phi.csv";
inline constexpr const char* theta = "theta.csv";
inline constexpr const char* topic_terms = "topic_terms.csv";
inline constexpr const char* topic_assignments = "topic_assignments.csv";
inline constexpr const char* topic_polarity = "topic_polarity.csv";
inline constexpr const char* manifest = "manifest.json";
}  // namespace artifacts

/// Single-stage commands working on the artifacts of earlier commands in
/// cfg.output_dir. A missing prerequisite raises DependencyError naming it.
void command_ingest(const PipelineConfig& cfg);
void command_filter(const PipelineConfig& cfg);
void command_rank(const PipelineConfig& cfg);
void command_freq(const PipelineConfig& cfg);
void command_assoc(const PipelineConfig& cfg);
void command_sentiment(const PipelineConfig& cfg);
void command_cluster(const PipelineConfig& cfg);
void command_topics(const PipelineConfig& cfg);

}  // namespace postmine
