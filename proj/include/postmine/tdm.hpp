#pragma once

#include "postmine/nlp.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace postmine {

/// Raw term-frequency counts, terms x documents. Rows follow the sorted
/// vocabulary, columns follow the input document order. Only positive counts
/// are stored.
class TermDocumentMatrix {
public:
    using Count = std::int64_t;
    using Storage = Eigen::SparseMatrix<Count, Eigen::RowMajor>;

    TermDocumentMatrix() = default;
    /// Validates the invariants: sorted unique vocabulary, unique doc ids,
    /// matching shape, strictly positive stored entries.
    TermDocumentMatrix(std::vector<std::string> vocabulary, std::vector<std::string> doc_ids, Storage counts);

    const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
    const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
    const Storage& counts() const noexcept { return counts_; }

    std::size_t term_count() const noexcept { return vocabulary_.size(); }
    std::size_t doc_count() const noexcept { return doc_ids_.size(); }

    std::optional<std::size_t> term_index(std::string_view term) const;
    Count count(std::size_t term, std::size_t doc) const;
    Count total() const;
    /// Number of documents in which each term occurs.
    std::vector<std::size_t> document_frequencies() const;

private:
    std::vector<std::string> vocabulary_;
    std::vector<std::string> doc_ids_;
    Storage counts_;
};

TermDocumentMatrix build_tdm(std::span<const TokenStream> streams);

struct TermCount {
    std::string term;
    TermDocumentMatrix::Count count = 0;
};

/// Top `n` terms by corpus-wide count; ties in ascending term order.
std::vector<TermCount> term_frequencies(const TermDocumentMatrix& m, std::size_t n);

struct Association {
    std::string term;
    double correlation = 0.0;
};

struct AssociationList {
    std::string anchor;
    std::vector<Association> entries;
};

inline constexpr double kDefaultMinCorrelation = 0.25;

/// Pearson correlation of the anchor's document-count vector with every other
/// term; entries >= min_corr, descending, ties by term. Zero-variance terms
/// are skipped.
AssociationList associations(const TermDocumentMatrix& m, std::string_view anchor,
                             double min_corr = kDefaultMinCorrelation);

/// Pearson correlation between two rows. Empty when either row has zero
/// variance.
std::optional<double> term_correlation(const TermDocumentMatrix& m, std::size_t a, std::size_t b);

/// Keeps terms occurring in at least (1 - max_sparsity) of the documents.
TermDocumentMatrix remove_sparse_terms(const TermDocumentMatrix& m, double max_sparsity);

/// `term,doc_id,count` sorted by (term, doc_id).
std::string coordinate_table(const TermDocumentMatrix& m);
/// `term,count`
std::string frequency_table(std::span<const TermCount> freqs);
/// `anchor,term,correlation` with 6 decimals.
std::string association_table(std::span<const AssociationList> lists);

}  // namespace postmine
