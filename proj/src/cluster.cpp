#include "postmine/cluster.hpp"

#include "postmine/error.hpp"
#include "postmine/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <numeric>

namespace postmine {

Metric parse_metric(std::string_view name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "manhattan") return Metric::manhattan;
    if (name == "cosine") return Metric::cosine;
    if (name == "precomputed") return Metric::precomputed;
    throw ArgumentError(fmt::format("unknown distance metric '{}'", name));
}

Linkage parse_linkage(std::string_view name) {
    if (name == "single") return Linkage::single;
    if (name == "complete") return Linkage::complete;
    if (name == "average") return Linkage::average;
    if (name == "ward" || name == "ward.D2") return Linkage::ward;
    throw ArgumentError(fmt::format("unknown linkage '{}'", name));
}

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::euclidean: return "euclidean";
        case Metric::manhattan: return "manhattan";
        case Metric::cosine: return "cosine";
        case Metric::precomputed: return "precomputed";
    }
    return "euclidean";
}

std::string_view to_string(Linkage l) {
    switch (l) {
        case Linkage::single: return "single";
        case Linkage::complete: return "complete";
        case Linkage::average: return "average";
        case Linkage::ward: return "ward";
    }
    return "complete";
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, Eigen::MatrixXd distances, Metric metric)
    : labels_(std::move(labels)), distances_(std::move(distances)), metric_(metric) {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (distances_.rows() != n || distances_.cols() != n) {
        throw ValidationError("distance matrix shape does not match its labels");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (distances_(i, i) != 0.0) throw ValidationError("distance matrix diagonal must be zero");
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = distances_(i, j);
            if (!std::isfinite(v) || v < 0.0) throw ValidationError("distances must be finite and non-negative");
            if (v != distances_(j, i)) throw ValidationError("distance matrix must be symmetric");
        }
    }
}

DistanceMatrix distance_matrix(const TermDocumentMatrix& m, Metric metric) {
    if (m.term_count() < 2) throw InsufficientDataError("distance matrix needs at least two terms");
    if (metric == Metric::precomputed) throw ArgumentError("'precomputed' is not a term-vector metric");
    const Eigen::MatrixXd points = m.counts().cast<double>().toDense();
    return DistanceMatrix(m.vocabulary(), pairwise_distances(points, metric), metric);
}

namespace {

double lance_williams(Linkage linkage, double d_ik, double d_jk, double d_ij, double n_i, double n_j, double n_k) {
    switch (linkage) {
        case Linkage::single: return std::min(d_ik, d_jk);
        case Linkage::complete: return std::max(d_ik, d_jk);
        case Linkage::average: return (n_i * d_ik + n_j * d_jk) / (n_i + n_j);
        case Linkage::ward: return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / (n_i + n_j + n_k);
    }
    return d_ik;
}

}  // namespace

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
    if (linkage == Linkage::ward && (d.metric() == Metric::manhattan || d.metric() == Metric::cosine)) {
        throw ArgumentError("ward linkage requires euclidean distances");
    }
    const std::size_t n = d.size();
    Dendrogram out{d.labels(), {}, linkage};
    if (n < 2) return out;

    // Ward runs on squared distances.
    Eigen::MatrixXd work = linkage == Linkage::ward ? d.distances().cwiseAbs2().eval() : d.distances();

    std::vector<std::size_t> active(n);  // slot per position
    std::iota(active.begin(), active.end(), 0);
    std::vector<std::size_t> node(n), size(n, 1);
    std::iota(node.begin(), node.end(), 0);

    double previous = 0.0;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best_p = 0, best_q = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < active.size(); ++p) {
            for (std::size_t q = p + 1; q < active.size(); ++q) {
                const double v = work(static_cast<Eigen::Index>(active[p]), static_cast<Eigen::Index>(active[q]));
                if (v < best) {
                    best = v;
                    best_p = p;
                    best_q = q;
                }
            }
        }
        const std::size_t si = active[best_p];
        const std::size_t sj = active[best_q];
        const auto ii = static_cast<Eigen::Index>(si);
        const auto jj = static_cast<Eigen::Index>(sj);
        const double d_ij = work(ii, jj);

        double height = linkage == Linkage::ward ? std::sqrt(std::max(0.0, d_ij)) : d_ij;
        // All four linkages are monotone; rounding in the update can put an
        // exact tie a few ulps below the previous height.
        height = std::max(height, previous);
        previous = height;

        out.merges.push_back({node[si], node[sj], height, size[si] + size[sj]});

        for (std::size_t p = 0; p < active.size(); ++p) {
            const std::size_t sk = active[p];
            if (sk == si || sk == sj) continue;
            const auto kk = static_cast<Eigen::Index>(sk);
            const double v = lance_williams(linkage, work(ii, kk), work(jj, kk), d_ij, static_cast<double>(size[si]),
                                            static_cast<double>(size[sj]), static_cast<double>(size[sk]));
            work(ii, kk) = v;
            work(kk, ii) = v;
        }
        size[si] += size[sj];
        node[si] = n + step;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_q));
    }
    return out;
}

std::vector<std::size_t> cut(const Dendrogram& t, std::size_t k) {
    const std::size_t n = t.leaf_count();
    if (k < 1 || k > n) throw ArgumentError(fmt::format("cut: k must lie in [1, {}], got {}", n, k));

    std::vector<std::size_t> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t s = 0; s < n - k; ++s) {
        const auto& m = t.merges[s];
        parent[find(m.left)] = n + s;
        parent[find(m.right)] = n + s;
    }
    std::vector<std::size_t> groups(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> root_label;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        const std::size_t root = find(leaf);
        auto it = std::find_if(root_label.begin(), root_label.end(), [&](const auto& p) { return p.first == root; });
        if (it == root_label.end()) {
            root_label.emplace_back(root, root_label.size() + 1);
            it = root_label.end() - 1;
        }
        groups[leaf] = it->second;
    }
    return groups;
}

namespace {

std::string newick_label(const std::string& label) {
    if (label.find_first_of(" \t\n()[]':;,") == std::string::npos && !label.empty()) return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

void write_newick(const Dendrogram& t, std::size_t id, double parent_height, std::string& out) {
    const std::size_t n = t.leaf_count();
    double height = 0.0;
    if (id < n) {
        out += newick_label(t.labels[id]);
    } else {
        const auto& m = t.merges[id - n];
        height = m.height;
        out += '(';
        write_newick(t, m.left, height, out);
        out += ',';
        write_newick(t, m.right, height, out);
        out += ')';
    }
    if (parent_height >= 0.0) out += fmt::format(":{:.6f}", parent_height - height);
}

}  // namespace

std::string to_newick(const Dendrogram& t) {
    std::string out;
    const std::size_t n = t.leaf_count();
    if (n == 0) return ";\n";
    write_newick(t, n == 1 ? 0 : 2 * n - 2, -1.0, out);
    return out + ";\n";
}

std::string merge_table(const Dendrogram& t) {
    std::string out = "step,left,right,height\n";
    for (std::size_t s = 0; s < t.merges.size(); ++s) {
        const auto& m = t.merges[s];
        out += fmt::format("{},{},{},{:.6f}\n", s + 1, m.left, m.right, m.height);
    }
    return out;
}

std::string cluster_table(const Dendrogram& t, const std::vector<std::size_t>& groups) {
    std::string out = "term,group\n";
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        out += fmt::format("{},{}\n", io::csv_field(t.labels[i]), groups.at(i));
    }
    return out;
}

}  // namespace postmine
