#include "postmine/topics.hpp"

#include "postmine/error.hpp"
#include "postmine/io.hpp"
#include "postmine/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace postmine {

LdaConfig LdaConfig::defaults(std::size_t topics, std::uint64_t seed) {
    LdaConfig cfg;
    cfg.topics = topics;
    cfg.alpha = topics > 0 ? 50.0 / static_cast<double>(topics) : 0.0;
    cfg.seed = seed;
    return cfg;
}

void LdaConfig::validate() const {
    if (topics < 1) throw ArgumentError("LDA needs at least one topic");
    if (!(alpha > 0.0)) throw ArgumentError("LDA alpha must be positive");
    if (!(beta > 0.0)) throw ArgumentError("LDA beta must be positive");
    if (iterations < 1) throw ArgumentError("LDA needs at least one iteration");
    if (burn_in >= iterations) throw ArgumentError("LDA burn-in must be smaller than the iteration count");
}

namespace {

#ifndef NDEBUG
void check_conservation(const SamplerState& s) {
    for (Eigen::Index d = 0; d < s.doc_topic.rows(); ++d) {
        assert(s.doc_topic.row(d).sum() == static_cast<std::int64_t>(s.words[static_cast<std::size_t>(d)].size()));
    }
    for (Eigen::Index k = 0; k < s.topic_term.rows(); ++k) {
        assert(s.topic_term.row(k).sum() == s.topic_total(k));
    }
}
#endif

}  // namespace

TopicModel fit_lda(std::span<const TokenStream> streams, const LdaConfig& cfg, const SweepObserver& observer) {
    cfg.validate();

    TopicModel model;
    model.config = cfg;
    for (const auto& s : streams) {
        model.doc_ids.push_back(s.post_id);
        model.vocabulary.insert(model.vocabulary.end(), s.tokens.begin(), s.tokens.end());
    }
    auto& vocab = model.vocabulary;
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    if (vocab.empty()) throw InsufficientDataError("LDA needs at least one non-empty document");

    std::vector<std::vector<std::uint32_t>> words(streams.size());
    std::size_t total_tokens = 0;
    for (std::size_t d = 0; d < streams.size(); ++d) {
        for (const auto& t : streams[d].tokens) {
            const auto it = std::lower_bound(vocab.begin(), vocab.end(), t);
            words[d].push_back(static_cast<std::uint32_t>(it - vocab.begin()));
        }
        total_tokens += words[d].size();
    }
    if (cfg.topics > total_tokens) {
        throw ArgumentError(fmt::format("LDA topic count {} exceeds the token count {}", cfg.topics, total_tokens));
    }

    const auto K = static_cast<Eigen::Index>(cfg.topics);
    const auto V = static_cast<Eigen::Index>(vocab.size());
    const auto D = static_cast<Eigen::Index>(streams.size());
    const double v_beta = static_cast<double>(V) * cfg.beta;

    CountMatrix doc_topic = CountMatrix::Zero(D, K);
    CountMatrix topic_term = CountMatrix::Zero(K, V);
    CountVector topic_total = CountVector::Zero(K);
    std::vector<std::vector<std::uint32_t>> topics(streams.size());

    Xoshiro256 rng(cfg.seed);
    for (std::size_t d = 0; d < words.size(); ++d) {
        topics[d].resize(words[d].size());
        for (std::size_t i = 0; i < words[d].size(); ++i) {
            const auto k = static_cast<std::uint32_t>(rng.below(cfg.topics));
            topics[d][i] = k;
            ++doc_topic(static_cast<Eigen::Index>(d), k);
            ++topic_term(k, words[d][i]);
            ++topic_total(k);
        }
    }

    const SamplerState state{doc_topic, topic_term, topic_total, words, topics};
    Eigen::MatrixXd phi_sum = Eigen::MatrixXd::Zero(K, V);
    Eigen::MatrixXd theta_sum = Eigen::MatrixXd::Zero(D, K);
    std::size_t samples = 0;

    auto estimate_phi = [&] {
        Eigen::MatrixXd phi(K, V);
        for (Eigen::Index k = 0; k < K; ++k) {
            const double denom = static_cast<double>(topic_total(k)) + v_beta;
            for (Eigen::Index w = 0; w < V; ++w) phi(k, w) = (static_cast<double>(topic_term(k, w)) + cfg.beta) / denom;
        }
        return phi;
    };
    auto estimate_theta = [&] {
        Eigen::MatrixXd theta(D, K);
        const double k_alpha = static_cast<double>(K) * cfg.alpha;
        for (Eigen::Index d = 0; d < D; ++d) {
            const double denom = static_cast<double>(words[static_cast<std::size_t>(d)].size()) + k_alpha;
            for (Eigen::Index k = 0; k < K; ++k) {
                theta(d, k) = (static_cast<double>(doc_topic(d, k)) + cfg.alpha) / denom;
            }
        }
        return theta;
    };

    std::vector<double> cumulative(cfg.topics);
    for (std::size_t sweep = 1; sweep <= cfg.iterations; ++sweep) {
        for (std::size_t d = 0; d < words.size(); ++d) {
            const auto dd = static_cast<Eigen::Index>(d);
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const std::uint32_t w = words[d][i];
                const std::uint32_t old_k = topics[d][i];
                --doc_topic(dd, old_k);
                --topic_term(old_k, w);
                --topic_total(old_k);

                double acc = 0.0;
                for (Eigen::Index k = 0; k < K; ++k) {
                    acc += (static_cast<double>(doc_topic(dd, k)) + cfg.alpha) *
                           (static_cast<double>(topic_term(k, w)) + cfg.beta) /
                           (static_cast<double>(topic_total(k)) + v_beta);
                    cumulative[static_cast<std::size_t>(k)] = acc;
                }
                const double u = rng.uniform() * acc;
                std::size_t new_k = cfg.topics - 1;
                for (std::size_t k = 0; k < cfg.topics; ++k) {
                    if (u < cumulative[k]) {
                        new_k = k;
                        break;
                    }
                }
                topics[d][i] = static_cast<std::uint32_t>(new_k);
                ++doc_topic(dd, static_cast<Eigen::Index>(new_k));
                ++topic_term(static_cast<Eigen::Index>(new_k), w);
                ++topic_total(static_cast<Eigen::Index>(new_k));
            }
        }
#ifndef NDEBUG
        check_conservation(state);
#endif
        if (observer) observer(sweep, state);
        if (cfg.average_samples && sweep > cfg.burn_in) {
            phi_sum += estimate_phi();
            theta_sum += estimate_theta();
            ++samples;
        }
    }

    if (cfg.average_samples && samples > 0) {
        model.phi = phi_sum / static_cast<double>(samples);
        model.theta = theta_sum / static_cast<double>(samples);
    } else {
        model.phi = estimate_phi();
        model.theta = estimate_theta();
    }
    model.assignments = std::move(topics);
    model.words = std::move(words);
    return model;
}

std::vector<TermProbability> top_terms(const TopicModel& m, std::size_t topic, std::size_t n) {
    if (topic >= m.topic_count()) {
        throw ArgumentError(fmt::format("topic index {} out of range (K = {})", topic, m.topic_count()));
    }
    std::vector<TermProbability> out;
    out.reserve(m.vocabulary.size());
    for (std::size_t w = 0; w < m.vocabulary.size(); ++w) {
        out.push_back({m.vocabulary[w], m.phi(static_cast<Eigen::Index>(topic), static_cast<Eigen::Index>(w))});
    }
    std::stable_sort(out.begin(), out.end(), [](const TermProbability& a, const TermProbability& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.term < b.term;
    });
    if (out.size() > n) out.resize(n);
    return out;
}

std::size_t dominant_topic(const TopicModel& m, std::size_t doc) {
    const auto row = m.theta.row(static_cast<Eigen::Index>(doc));
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < row.size(); ++k) {
        if (row(k) > row(best)) best = k;
    }
    return static_cast<std::size_t>(best);
}

TopicPolarity topic_polarity(const TopicModel& m, std::span<const PolarityResult> polarities) {
    std::unordered_map<std::string_view, const PolarityResult*> by_id;
    for (const auto& p : polarities) by_id.emplace(p.post_id, &p);

    TopicPolarity out;
    out.topics.resize(m.topic_count());
    std::vector<long long> score_sum(m.topic_count(), 0);
    for (std::size_t d = 0; d < m.doc_ids.size(); ++d) {
        const auto it = by_id.find(m.doc_ids[d]);
        if (it == by_id.end()) {
            throw ValidationError(fmt::format("no polarity result for document '{}'", m.doc_ids[d]));
        }
        const std::size_t k = dominant_topic(m, d);
        auto& row = out.topics[k];
        ++row.doc_count;
        score_sum[k] += it->second->score;
        switch (it->second->label) {
            case Polarity::positive: ++row.labels.positive; break;
            case Polarity::negative: ++row.labels.negative; break;
            case Polarity::neutral: ++row.labels.neutral; break;
        }
    }
    for (std::size_t k = 0; k < out.topics.size(); ++k) {
        auto& row = out.topics[k];
        row.mean_score = row.doc_count > 0 ? static_cast<double>(score_sum[k]) / static_cast<double>(row.doc_count) : 0.0;
    }
    return out;
}

std::string phi_table(const TopicModel& m) {
    std::string out = "topic";
    for (const auto& t : m.vocabulary) out += "," + io::csv_field(t);
    out += '\n';
    for (Eigen::Index k = 0; k < m.phi.rows(); ++k) {
        out += fmt::format("{}", k);
        for (Eigen::Index w = 0; w < m.phi.cols(); ++w) out += fmt::format(",{:.12g}", m.phi(k, w));
        out += '\n';
    }
    return out;
}

std::string theta_table(const TopicModel& m) {
    std::string out = "doc_id";
    for (Eigen::Index k = 0; k < m.theta.cols(); ++k) out += fmt::format(",topic_{}", k);
    out += '\n';
    for (Eigen::Index d = 0; d < m.theta.rows(); ++d) {
        out += io::csv_field(m.doc_ids[static_cast<std::size_t>(d)]);
        for (Eigen::Index k = 0; k < m.theta.cols(); ++k) out += fmt::format(",{:.12g}", m.theta(d, k));
        out += '\n';
    }
    return out;
}

std::string topic_terms_table(const TopicModel& m, std::size_t n) {
    std::string out = "topic,term,probability\n";
    for (std::size_t k = 0; k < m.topic_count(); ++k) {
        for (const auto& tp : top_terms(m, k, n)) {
            out += fmt::format("{},{},{:.6f}\n", k, io::csv_field(tp.term), tp.probability);
        }
    }
    return out;
}

std::string assignments_table(const TopicModel& m) {
    std::string out = "doc_id,position,term,topic\n";
    for (std::size_t d = 0; d < m.assignments.size(); ++d) {
        const std::string id = io::csv_field(m.doc_ids[d]);
        for (std::size_t i = 0; i < m.assignments[d].size(); ++i) {
            out += fmt::format("{},{},{},{}\n", id, i, io::csv_field(m.vocabulary[m.words[d][i]]),
                               m.assignments[d][i]);
        }
    }
    return out;
}

std::string topic_polarity_table(const TopicPolarity& tp) {
    std::string out = "topic,doc_count,mean_score,pos,neg,neutral\n";
    for (std::size_t k = 0; k < tp.topics.size(); ++k) {
        const auto& r = tp.topics[k];
        out += fmt::format("{},{},{:.6f},{},{},{}\n", k, r.doc_count, r.mean_score, r.labels.positive,
                           r.labels.negative, r.labels.neutral);
    }
    return out;
}

}  // namespace postmine
