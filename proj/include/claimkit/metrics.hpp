#pragma once
// Joint-clustering evaluation: semantic coherence via a modified average
// silhouette width over claims- and papers-centroids, and interconnection
// coherence via link-based cluster recommendation and Recall@k.

#include "claimkit/core.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace claimkit {

// Semantic textual similarity of two embeddings: cosine clamped to [0,1].
inline double sts(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("sts: dimension mismatch");
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("sts: undefined similarity");
    return std::clamp(u.dot(v) / (nu * nv), 0.0, 1.0);
}

// Mean embeddings per cluster, defined only for the kinds with members.
struct ClusterCentroids {
    std::optional<Vector> claims_centroid;
    std::optional<Vector> papers_centroid;
};

namespace detail {

inline std::optional<Vector> mean_rows(const Matrix& data, const std::vector<int>& labels,
                                       int cluster) {
    Vector sum = Vector::Zero(data.cols());
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        if (labels[static_cast<std::size_t>(i)] != cluster) continue;
        sum += data.row(i).transpose();
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

// Cluster indices by descending score; ties resolve to the lowest index.
inline std::vector<int> rank_descending(const Eigen::RowVectorXd& scores) {
    std::vector<int> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores(a) > scores(b); });
    return order;
}

}  // namespace detail

inline std::vector<ClusterCentroids> cluster_centroids(const EmbeddingMatrix& claims,
                                                       const EmbeddingMatrix& papers,
                                                       const ClusterMatrix& claims_members,
                                                       const ClusterMatrix& papers_members) {
    const auto claim_labels = hard_assign(claims_members);
    const auto paper_labels = hard_assign(papers_members);
    std::vector<ClusterCentroids> out(static_cast<std::size_t>(claims_members.clusters()));
    for (int c = 0; c < static_cast<int>(out.size()); ++c) {
        out[static_cast<std::size_t>(c)].claims_centroid =
            detail::mean_rows(claims.data(), claim_labels, c);
        out[static_cast<std::size_t>(c)].papers_centroid =
            detail::mean_rows(papers.data(), paper_labels, c);
    }
    return out;
}

// Per cluster, the mean STS over every (element, centroid) combination where
// elements are the cluster's claims and papers and the centroids are its
// claims- and papers-centroids; returns the unweighted mean over non-empty
// clusters.
inline double modified_asw(const EmbeddingMatrix& claims, const EmbeddingMatrix& papers,
                           const ClusterMatrix& claims_members,
                           const ClusterMatrix& papers_members) {
    if (claims.rows() != claims_members.items() || papers.rows() != papers_members.items() ||
        claims_members.clusters() != papers_members.clusters() || claims.dim() != papers.dim())
        throw std::invalid_argument("modified_asw: shape mismatch");

    const auto claim_labels = hard_assign(claims_members);
    const auto paper_labels = hard_assign(papers_members);
    const auto centroids = cluster_centroids(claims, papers, claims_members, papers_members);

    double total = 0.0;
    int non_empty = 0;
    for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
        std::vector<Vector> cents;
        if (centroids[static_cast<std::size_t>(c)].claims_centroid)
            cents.push_back(*centroids[static_cast<std::size_t>(c)].claims_centroid);
        if (centroids[static_cast<std::size_t>(c)].papers_centroid)
            cents.push_back(*centroids[static_cast<std::size_t>(c)].papers_centroid);
        if (cents.empty()) continue;

        double sum = 0.0;
        Eigen::Index members = 0;
        for (Eigen::Index i = 0; i < claims.rows(); ++i) {
            if (claim_labels[static_cast<std::size_t>(i)] != c) continue;
            for (const auto& cent : cents) sum += sts(claims.data().row(i).transpose(), cent);
            ++members;
        }
        for (Eigen::Index i = 0; i < papers.rows(); ++i) {
            if (paper_labels[static_cast<std::size_t>(i)] != c) continue;
            for (const auto& cent : cents) sum += sts(papers.data().row(i).transpose(), cent);
            ++members;
        }
        total += sum / (static_cast<double>(cents.size()) * static_cast<double>(members));
        ++non_empty;
    }
    if (non_empty == 0) throw std::invalid_argument("modified_asw: no non-empty cluster");
    return total / static_cast<double>(non_empty);
}

enum class Side { claims, papers };

// Link-based cluster recommendation: each item's score vector is the sum of
// the membership rows of its linked counterparts; clusters are ranked by
// descending score with ties to the lowest index. Unlinked items get an
// empty ranking.
inline std::vector<std::vector<int>> recommend(const LinkMatrix& link,
                                               const ClusterMatrix& counterpart_members,
                                               Side side) {
    const Matrix& l = link.data();
    const Matrix& m = counterpart_members.data();
    const Eigen::Index expected = side == Side::claims ? l.cols() : l.rows();
    if (m.rows() != expected)
        throw std::invalid_argument("recommend: membership rows do not match link shape");

    const Eigen::Index items = side == Side::claims ? l.rows() : l.cols();
    std::vector<std::vector<int>> rankings(static_cast<std::size_t>(items));
    for (Eigen::Index i = 0; i < items; ++i) {
        Eigen::RowVectorXd scores = Eigen::RowVectorXd::Zero(m.cols());
        bool linked = false;
        for (Eigen::Index j = 0; j < expected; ++j) {
            const double bit = side == Side::claims ? l(i, j) : l(j, i);
            if (bit == 0.0) continue;
            scores += m.row(j);
            linked = true;
        }
        if (linked) rankings[static_cast<std::size_t>(i)] = detail::rank_descending(scores);
    }
    return rankings;
}

// Mean over both sides of the rate at which an item's own hard cluster
// appears among its top-k recommended clusters. Items without links are
// excluded; sides without any linked item are skipped.
inline double recall_at_k(const ClusterMatrix& claims_members, const ClusterMatrix& papers_members,
                          const LinkMatrix& link, int k) {
    if (k < 1) throw std::invalid_argument("recall_at_k: k < 1");

    auto side_rate = [&](const ClusterMatrix& own, const ClusterMatrix& other,
                         Side side) -> std::optional<double> {
        const auto labels = hard_assign(own);
        const auto rankings = recommend(link, other, side);
        long considered = 0;
        long hits = 0;
        for (std::size_t i = 0; i < rankings.size(); ++i) {
            if (rankings[i].empty()) continue;
            ++considered;
            const auto top = rankings[i].begin() +
                             std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(rankings[i].size()));
            if (std::find(rankings[i].begin(), top, labels[i]) != top) ++hits;
        }
        if (considered == 0) return std::nullopt;
        return static_cast<double>(hits) / static_cast<double>(considered);
    };

    const auto claims_rate = side_rate(claims_members, papers_members, Side::claims);
    const auto papers_rate = side_rate(papers_members, claims_members, Side::papers);
    if (!claims_rate && !papers_rate)
        throw std::invalid_argument("recall_at_k: no linked items on either side");
    if (!claims_rate) return *papers_rate;
    if (!papers_rate) return *claims_rate;
    return 0.5 * (*claims_rate + *papers_rate);
}

}  // namespace claimkit
