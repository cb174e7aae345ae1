#include "postmine/tdm.hpp"

#include "postmine/error.hpp"
#include "postmine/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

namespace postmine {

TermDocumentMatrix::TermDocumentMatrix(std::vector<std::string> vocabulary, std::vector<std::string> doc_ids,
                                       Storage counts)
    : vocabulary_(std::move(vocabulary)), doc_ids_(std::move(doc_ids)), counts_(std::move(counts)) {
    if (static_cast<std::size_t>(counts_.rows()) != vocabulary_.size() ||
        static_cast<std::size_t>(counts_.cols()) != doc_ids_.size()) {
        throw ValidationError("term-document matrix shape does not match vocabulary / documents");
    }
    if (std::adjacent_find(vocabulary_.begin(), vocabulary_.end(),
                           [](const auto& a, const auto& b) { return !(a < b); }) != vocabulary_.end()) {
        throw ValidationError("vocabulary must be sorted and unique");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& id : doc_ids_) {
        if (!seen.insert(id).second) throw ValidationError(fmt::format("duplicate document id '{}'", id));
    }
    counts_.makeCompressed();
    for (Eigen::Index r = 0; r < counts_.outerSize(); ++r) {
        for (Storage::InnerIterator it(counts_, r); it; ++it) {
            if (it.value() <= 0) throw ValidationError("term-document matrix stores a non-positive count");
        }
    }
}

std::optional<std::size_t> TermDocumentMatrix::term_index(std::string_view term) const {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), term);
    if (it == vocabulary_.end() || *it != term) return std::nullopt;
    return static_cast<std::size_t>(it - vocabulary_.begin());
}

TermDocumentMatrix::Count TermDocumentMatrix::count(std::size_t term, std::size_t doc) const {
    return counts_.coeff(static_cast<Eigen::Index>(term), static_cast<Eigen::Index>(doc));
}

TermDocumentMatrix::Count TermDocumentMatrix::total() const {
    Count sum = 0;
    for (Eigen::Index k = 0; k < counts_.nonZeros(); ++k) sum += counts_.valuePtr()[k];
    return sum;
}

std::vector<std::size_t> TermDocumentMatrix::document_frequencies() const {
    std::vector<std::size_t> df(vocabulary_.size(), 0);
    for (Eigen::Index r = 0; r < counts_.outerSize(); ++r) {
        df[static_cast<std::size_t>(r)] = static_cast<std::size_t>(counts_.innerVector(r).nonZeros());
    }
    return df;
}

TermDocumentMatrix build_tdm(std::span<const TokenStream> streams) {
    std::vector<std::string> vocabulary;
    for (const auto& s : streams) vocabulary.insert(vocabulary.end(), s.tokens.begin(), s.tokens.end());
    std::sort(vocabulary.begin(), vocabulary.end());
    vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());

    std::vector<std::string> doc_ids;
    doc_ids.reserve(streams.size());
    std::vector<Eigen::Triplet<TermDocumentMatrix::Count>> triplets;
    for (std::size_t d = 0; d < streams.size(); ++d) {
        doc_ids.push_back(streams[d].post_id);
        std::map<std::size_t, TermDocumentMatrix::Count> local;
        for (const auto& t : streams[d].tokens) {
            const auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), t);
            ++local[static_cast<std::size_t>(it - vocabulary.begin())];
        }
        for (const auto& [term, n] : local) {
            triplets.emplace_back(static_cast<Eigen::Index>(term), static_cast<Eigen::Index>(d), n);
        }
    }
    TermDocumentMatrix::Storage counts(static_cast<Eigen::Index>(vocabulary.size()),
                                       static_cast<Eigen::Index>(doc_ids.size()));
    counts.setFromTriplets(triplets.begin(), triplets.end());
    return TermDocumentMatrix(std::move(vocabulary), std::move(doc_ids), std::move(counts));
}

std::vector<TermCount> term_frequencies(const TermDocumentMatrix& m, std::size_t n) {
    std::vector<TermCount> out;
    out.reserve(m.term_count());
    const auto& c = m.counts();
    for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
        TermDocumentMatrix::Count sum = 0;
        for (TermDocumentMatrix::Storage::InnerIterator it(c, r); it; ++it) sum += it.value();
        out.push_back({m.vocabulary()[static_cast<std::size_t>(r)], sum});
    }
    std::stable_sort(out.begin(), out.end(), [](const TermCount& a, const TermCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.term < b.term;
    });
    if (out.size() > n) out.resize(n);
    return out;
}

namespace {

struct RowMoments {
    __int128 sum = 0;
    __int128 sum_sq = 0;
};

RowMoments moments(const TermDocumentMatrix::Storage& c, Eigen::Index row) {
    RowMoments m;
    for (TermDocumentMatrix::Storage::InnerIterator it(c, row); it; ++it) {
        m.sum += it.value();
        m.sum_sq += static_cast<__int128>(it.value()) * it.value();
    }
    return m;
}

__int128 cross(const TermDocumentMatrix::Storage& c, Eigen::Index a, Eigen::Index b) {
    __int128 s = 0;
    TermDocumentMatrix::Storage::InnerIterator ia(c, a), ib(c, b);
    while (ia && ib) {
        if (ia.index() < ib.index()) {
            ++ia;
        } else if (ib.index() < ia.index()) {
            ++ib;
        } else {
            s += static_cast<__int128>(ia.value()) * ib.value();
            ++ia;
            ++ib;
        }
    }
    return s;
}

// n*sum(xy) - sum(x)sum(y) over sqrt of the matching variance terms. The
// integer numerator and denominator parts make the result exactly symmetric.
std::optional<double> pearson(const TermDocumentMatrix::Storage& c, Eigen::Index a, Eigen::Index b,
                              const RowMoments& ma, const RowMoments& mb) {
    const __int128 n = c.cols();
    const __int128 var_a = n * ma.sum_sq - ma.sum * ma.sum;
    const __int128 var_b = n * mb.sum_sq - mb.sum * mb.sum;
    if (var_a <= 0 || var_b <= 0) return std::nullopt;
    const __int128 cov = n * cross(c, a, b) - ma.sum * mb.sum;
    if (var_a == var_b) return std::clamp(static_cast<double>(static_cast<long double>(cov) / var_a), -1.0, 1.0);
    const long double den = std::sqrt(static_cast<long double>(var_a) * static_cast<long double>(var_b));
    return std::clamp(static_cast<double>(static_cast<long double>(cov) / den), -1.0, 1.0);
}

}  // namespace

std::optional<double> term_correlation(const TermDocumentMatrix& m, std::size_t a, std::size_t b) {
    if (m.doc_count() < 2) throw InsufficientDataError("correlation needs at least two documents");
    const auto& c = m.counts();
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    return pearson(c, ia, ib, moments(c, ia), moments(c, ib));
}

AssociationList associations(const TermDocumentMatrix& m, std::string_view anchor, double min_corr) {
    if (!(min_corr >= 0.0 && min_corr <= 1.0)) throw ArgumentError("min_corr must lie in [0, 1]");
    const auto anchor_index = m.term_index(anchor);
    if (!anchor_index) throw NotFoundError(fmt::format("term '{}' is not in the vocabulary", anchor));
    if (m.doc_count() < 2) throw InsufficientDataError("associations need at least two documents");

    const auto& c = m.counts();
    const auto a = static_cast<Eigen::Index>(*anchor_index);
    const RowMoments ma = moments(c, a);
    AssociationList out{std::string(anchor), {}};
    for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
        if (r == a) continue;
        const auto corr = pearson(c, a, r, ma, moments(c, r));
        if (corr && *corr >= min_corr) out.entries.push_back({m.vocabulary()[static_cast<std::size_t>(r)], *corr});
    }
    std::stable_sort(out.entries.begin(), out.entries.end(), [](const Association& x, const Association& y) {
        if (x.correlation != y.correlation) return x.correlation > y.correlation;
        return x.term < y.term;
    });
    return out;
}

TermDocumentMatrix remove_sparse_terms(const TermDocumentMatrix& m, double max_sparsity) {
    if (!(max_sparsity > 0.0 && max_sparsity <= 1.0)) throw ArgumentError("max_sparsity must lie in (0, 1]");
    const auto df = m.document_frequencies();
    const double needed = (1.0 - max_sparsity) * static_cast<double>(m.doc_count());
    const double slack = 1e-9 * std::max<double>(1.0, static_cast<double>(m.doc_count()));

    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < df.size(); ++t) {
        if (static_cast<double>(df[t]) + slack >= needed) keep.push_back(t);
    }
    std::vector<std::string> vocabulary;
    std::vector<Eigen::Triplet<TermDocumentMatrix::Count>> triplets;
    const auto& c = m.counts();
    for (std::size_t row = 0; row < keep.size(); ++row) {
        vocabulary.push_back(m.vocabulary()[keep[row]]);
        for (TermDocumentMatrix::Storage::InnerIterator it(c, static_cast<Eigen::Index>(keep[row])); it; ++it) {
            triplets.emplace_back(static_cast<Eigen::Index>(row), it.col(), it.value());
        }
    }
    TermDocumentMatrix::Storage counts(static_cast<Eigen::Index>(keep.size()), c.cols());
    counts.setFromTriplets(triplets.begin(), triplets.end());
    return TermDocumentMatrix(std::move(vocabulary), m.doc_ids(), std::move(counts));
}

std::string coordinate_table(const TermDocumentMatrix& m) {
    std::vector<std::size_t> doc_order(m.doc_count());
    std::iota(doc_order.begin(), doc_order.end(), 0);
    std::sort(doc_order.begin(), doc_order.end(),
              [&](std::size_t a, std::size_t b) { return m.doc_ids()[a] < m.doc_ids()[b]; });
    std::vector<std::size_t> rank(m.doc_count());
    for (std::size_t i = 0; i < doc_order.size(); ++i) rank[doc_order[i]] = i;

    std::string out = "term,doc_id,count\n";
    const auto& c = m.counts();
    std::vector<std::pair<std::size_t, TermDocumentMatrix::Count>> row;
    for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
        row.clear();
        for (TermDocumentMatrix::Storage::InnerIterator it(c, r); it; ++it) {
            row.emplace_back(static_cast<std::size_t>(it.col()), it.value());
        }
        std::sort(row.begin(), row.end(), [&](const auto& x, const auto& y) { return rank[x.first] < rank[y.first]; });
        const std::string term = io::csv_field(m.vocabulary()[static_cast<std::size_t>(r)]);
        for (const auto& [doc, n] : row) {
            out += fmt::format("{},{},{}\n", term, io::csv_field(m.doc_ids()[doc]), n);
        }
    }
    return out;
}

std::string frequency_table(std::span<const TermCount> freqs) {
    std::string out = "term,count\n";
    for (const auto& f : freqs) out += fmt::format("{},{}\n", io::csv_field(f.term), f.count);
    return out;
}

std::string association_table(std::span<const AssociationList> lists) {
    std::string out = "anchor,term,correlation\n";
    for (const auto& l : lists) {
        for (const auto& e : l.entries) {
            out += fmt::format("{},{},{:.6f}\n", io::csv_field(l.anchor), io::csv_field(e.term), e.correlation);
        }
    }
    return out;
}

}  // namespace postmine
