#pragma once

#include "postmine/tdm.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace postmine {

enum class Metric { euclidean, manhattan, cosine, precomputed };
enum class Linkage { single, complete, average, ward };

Metric parse_metric(std::string_view name);
Linkage parse_linkage(std::string_view name);
std::string_view to_string(Metric m);
std::string_view to_string(Linkage l);

/// Pairwise distances between the rows of `points`. Cosine distance is
/// 1 - cos; a zero row is at distance 1 from every other row.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
pairwise_distances(const Eigen::MatrixBase<Derived>& points, Metric metric) {
    using Scalar = typename Derived::Scalar;
    using Result = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = points.rows();
    Result d = Result::Zero(n, n);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> norms;
    if (metric == Metric::cosine) norms = points.rowwise().norm();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Scalar v{};
            switch (metric) {
                case Metric::euclidean:
                case Metric::precomputed: v = (points.row(i) - points.row(j)).norm(); break;
                case Metric::manhattan: v = (points.row(i) - points.row(j)).cwiseAbs().sum(); break;
                case Metric::cosine: {
                    const Scalar denom = norms(i) * norms(j);
                    v = denom > Scalar(0) ? Scalar(1) - points.row(i).dot(points.row(j)) / denom : Scalar(1);
                    if (v < Scalar(0)) v = Scalar(0);
                    break;
                }
            }
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

/// Symmetric, non-negative, zero-diagonal distances with one label per row.
class DistanceMatrix {
public:
    DistanceMatrix(std::vector<std::string> labels, Eigen::MatrixXd distances, Metric metric = Metric::precomputed);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Eigen::MatrixXd& distances() const noexcept { return distances_; }
    Metric metric() const noexcept { return metric_; }
    std::size_t size() const noexcept { return labels_.size(); }
    double operator()(std::size_t i, std::size_t j) const {
        return distances_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd distances_;
    Metric metric_;
};

/// Distances between term count vectors (rows of the matrix).
DistanceMatrix distance_matrix(const TermDocumentMatrix& m, Metric metric = Metric::euclidean);

struct Merge {
    std::size_t left = 0;   // node id: leaves are 0..n-1, merge s creates n+s
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;   // leaves under the new node
};

struct Dendrogram {
    std::vector<std::string> labels;
    std::vector<Merge> merges;
    Linkage linkage = Linkage::complete;

    std::size_t leaf_count() const noexcept { return labels.size(); }
};

/// Lance-Williams agglomeration. Each step merges the closest pair of active
/// clusters; ties go to the smallest (i, j) position pair, where the merged
/// cluster takes position i and position j is removed. Ward works on squared
/// distances and reports the square root as the height.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage = Linkage::complete);

/// Group label (1-based, numbered by first leaf) for every leaf after undoing
/// the last k-1 merges.
std::vector<std::size_t> cut(const Dendrogram& t, std::size_t k);

/// Newick with branch lengths; labels quoted when they contain Newick
/// metacharacters.
std::string to_newick(const Dendrogram& t);
/// `step,left,right,height`
std::string merge_table(const Dendrogram& t);
/// `term,group`
std::string cluster_table(const Dendrogram& t, const std::vector<std::size_t>& groups);

}  // namespace postmine
