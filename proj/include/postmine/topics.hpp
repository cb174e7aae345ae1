#pragma once

#include "postmine/nlp.hpp"
#include "postmine/sentiment.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace postmine {

struct LdaConfig {
    std::size_t topics = 2;
    double alpha = 25.0;   // symmetric document-topic prior
    double beta = 0.01;    // symmetric topic-term prior
    std::size_t iterations = 1000;
    std::size_t burn_in = 200;
    std::uint64_t seed = 0;
    /// Average the estimates over the sweeps after burn-in instead of taking
    /// the final state. Label switching between sweeps makes this unsafe on
    /// long chains.
    bool average_samples = false;

    /// alpha = 50 / K, beta = 0.01, 1000 iterations, 200 burn-in sweeps.
    static LdaConfig defaults(std::size_t topics, std::uint64_t seed = 0);
    void validate() const;
};

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Count tables of the collapsed sampler, exposed read-only to observers.
struct SamplerState {
    const CountMatrix& doc_topic;    // D x K
    const CountMatrix& topic_term;   // K x V
    const CountVector& topic_total;  // K
    const std::vector<std::vector<std::uint32_t>>& words;
    const std::vector<std::vector<std::uint32_t>>& topics;
};

/// Called after every sweep with its 1-based index.
using SweepObserver = std::function<void(std::size_t sweep, const SamplerState&)>;

struct TopicModel {
    Eigen::MatrixXd phi;    // K x V
    Eigen::MatrixXd theta;  // D x K
    std::vector<std::vector<std::uint32_t>> assignments;  // topic per token, final sweep
    std::vector<std::vector<std::uint32_t>> words;        // vocabulary index per token
    LdaConfig config;
    std::vector<std::string> vocabulary;
    std::vector<std::string> doc_ids;

    std::size_t topic_count() const noexcept { return static_cast<std::size_t>(phi.rows()); }
};

/// Collapsed Gibbs sampling. Topics start uniform from the seeded generator;
/// each sweep visits documents and tokens in order and resamples from
/// (n_dk + alpha)(n_kw + beta) / (n_k + V beta) with the token removed.
TopicModel fit_lda(std::span<const TokenStream> streams, const LdaConfig& cfg, const SweepObserver& observer = {});

struct TermProbability {
    std::string term;
    double probability = 0.0;
};

std::vector<TermProbability> top_terms(const TopicModel& m, std::size_t topic, std::size_t n);

/// argmax over a theta row; ties go to the lowest topic index.
std::size_t dominant_topic(const TopicModel& m, std::size_t doc);

struct TopicPolarityRow {
    std::size_t doc_count = 0;
    double mean_score = 0.0;
    PolarityDistribution labels;
};

struct TopicPolarity {
    std::vector<TopicPolarityRow> topics;
};

TopicPolarity topic_polarity(const TopicModel& m, std::span<const PolarityResult> polarities);

std::string phi_table(const TopicModel& m);
std::string theta_table(const TopicModel& m);
/// `topic,term,probability` for the top n terms of every topic.
std::string topic_terms_table(const TopicModel& m, std::size_t n);
/// `doc_id,position,term,topic`
std::string assignments_table(const TopicModel& m);
/// `topic,doc_count,mean_score,pos,neg,neutral`
std::string topic_polarity_table(const TopicPolarity& tp);

}  // namespace postmine
