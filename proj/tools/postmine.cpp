// postmine: command-line front end for the text-mining pipeline.

#include "postmine/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <functional>
#include <map>
#include <optional>

namespace {

struct SharedFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string input;
    std::vector<std::string> settings;
    int verbosity = 0;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
    cmd->add_option("-c,--config", f.config, "configuration file (key = value lines)");
    cmd->add_option("-s,--seed", f.seed, "seed; overrides the configuration");
    cmd->add_option("-o,--output", f.output, "output directory; overrides the configuration");
    cmd->add_option("-i,--input", f.input, "input corpus; overrides the configuration");
    cmd->add_option("--set", f.settings, "extra key=value override, repeatable");
    cmd->add_flag("-v,--verbose", f.verbosity, "report per-stage timings on stderr");
}

postmine::PipelineConfig resolve(const SharedFlags& f) {
    auto cfg = f.config.empty() ? postmine::PipelineConfig::defaults() : postmine::load_config(f.config);
    const auto cwd = std::filesystem::current_path();
    for (const auto& s : f.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw postmine::ConfigError(fmt::format("--set expects key=value, got '{}'", s));
        postmine::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1), cwd);
    }
    if (!f.input.empty()) postmine::apply_setting(cfg, "input", f.input, cwd);
    if (!f.output.empty()) postmine::apply_setting(cfg, "output_dir", f.output, cwd);
    if (f.seed) cfg.seed = *f.seed;
    return cfg;
}

void report(const postmine::RunManifest& m, int verbosity) {
    fmt::print("retained {} of {} posts ({})\n", m.retained, m.loaded, m.retained_ratio);
    if (verbosity <= 0) return;
    for (const auto& s : m.stages) {
        std::string counts;
        if (s.before && s.after) counts = fmt::format("  {} -> {}", *s.before, *s.after);
        fmt::print(stderr, "{:<15} {:>9.3f}s{}\n", s.name, s.seconds, counts);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"postmine: keyword filtering, influence ranking, term statistics, sentiment, clustering and "
                 "topic models for short social-media posts"};
    app.set_version_flag("--version", std::string(postmine::kToolVersion));
    app.require_subcommand(1);

    SharedFlags flags;
    using Command = std::function<void(const postmine::PipelineConfig&)>;
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"run", "full pipeline, every stage", {}},
        {"ingest", "load and validate the input corpus", postmine::command_ingest},
        {"filter", "date and keyword filters over the ingested corpus", postmine::command_filter},
        {"rank", "influence ranking of authors", postmine::command_rank},
        {"freq", "preprocessing, term-document matrix and term frequencies", postmine::command_freq},
        {"assoc", "term associations for the configured anchors", postmine::command_assoc},
        {"sentiment", "lexicon polarity per post", postmine::command_sentiment},
        {"cluster", "hierarchical clustering of terms", postmine::command_cluster},
        {"topics", "LDA topics and topic polarity", postmine::command_topics},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help, fn] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_shared(sub, flags);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const auto cfg = resolve(flags);
        for (const auto& [name, help, fn] : commands) {
            if (!subs[name]->parsed()) continue;
            if (fn) {
                fn(cfg);
            } else {
                report(postmine::run_pipeline(cfg), flags.verbosity);
            }
        }
    } catch (const postmine::StageError& e) {
        fmt::print(stderr, "error [{}:{}]: {}\n", e.stage(), e.cause_kind(), e.what());
        return 2;
    } catch (const postmine::Error& e) {
        fmt::print(stderr, "error [{}]: {}\n", e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}
