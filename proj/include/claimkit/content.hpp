#pragma once
// Content-based joint clustering in the shared embedding space:
// k-means (hard), diagonal-covariance GMM (soft), and PCA reduction.
// Claims and papers are clustered together on the row-wise concatenation.

#include "claimkit/core.hpp"

#include <limits>
#include <numbers>
#include <utility>

namespace claimkit {

enum class ContentAlgorithm { kmeans, gmm };

struct ContentModelChoice {
    ContentAlgorithm algorithm = ContentAlgorithm::kmeans;
    bool use_pca = false;
    int pca_dims = 0;
};

namespace detail {

// First centroid drawn from the seed, the rest by greedy farthest-point;
// ties resolve to the lowest row index.
inline std::vector<Eigen::Index> farthest_point_seeds(const Matrix& x, int k,
                                                      std::uint64_t seed) {
    std::vector<Eigen::Index> centers;
    auto rng = substream(seed, "kmeans-seeding");
    std::uniform_int_distribution<Eigen::Index> pick(0, x.rows() - 1);
    centers.push_back(pick(rng));
    Vector nearest = Vector::Constant(x.rows(), std::numeric_limits<double>::infinity());
    while (static_cast<int>(centers.size()) < k) {
        const auto last = centers.back();
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            nearest(i) = std::min(nearest(i), (x.row(i) - x.row(last)).squaredNorm());
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < x.rows(); ++i)
            if (nearest(i) > nearest(best)) best = i;
        centers.push_back(best);
    }
    return centers;
}

inline double logsumexp(const Eigen::RowVectorXd& v) {
    const double m = v.maxCoeff();
    return m + std::log((v.array() - m).exp().sum());
}

}  // namespace detail

// Lloyd iterations from farthest-point seeding. Hard one-hot output,
// deterministic given the seed.
inline ClusterMatrix kmeans(const EmbeddingMatrix& x, int k, std::uint64_t seed,
                            int max_iters = 100) {
    if (k < 1) throw std::invalid_argument("kmeans: k < 1");
    if (x.rows() < k) throw std::invalid_argument("kmeans: insufficient items");
    const Matrix& data = x.data();
    const Eigen::Index n = data.rows();

    Matrix centroids(k, data.cols());
    {
        const auto seeds = detail::farthest_point_seeds(data, k, seed);
        for (int c = 0; c < k; ++c) centroids.row(c) = data.row(seeds[static_cast<std::size_t>(c)]);
    }

    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (data.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (data.row(i) - centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[static_cast<std::size_t>(i)] != best) {
                assign[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;

        Matrix sums = Matrix::Zero(k, data.cols());
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(assign[static_cast<std::size_t>(i)]) += data.row(i);
            ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
                continue;
            }
            // Empty cluster: steal the point farthest from its own centroid.
            Eigen::Index far = 0;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double d =
                    (data.row(i) - centroids.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            centroids.row(c) = data.row(far);
            assign[static_cast<std::size_t>(far)] = c;
        }
    }

    Matrix memberships = Matrix::Zero(n, k);
    for (Eigen::Index i = 0; i < n; ++i) memberships(i, assign[static_cast<std::size_t>(i)]) = 1.0;
    return ClusterMatrix(std::move(memberships), ClusterKind::hard);
}

// Diagonal-covariance EM initialized from k-means. Soft responsibilities,
// variance floored at 1e-6, log-likelihood evaluated in log space.
inline ClusterMatrix gmm(const EmbeddingMatrix& x, int k, std::uint64_t seed,
                         int max_iters = 200, double tol = 1e-6) {
    if (k < 1) throw std::invalid_argument("gmm: k < 1");
    if (x.rows() < k) throw std::invalid_argument("gmm: insufficient items");
    constexpr double kVarFloor = 1e-6;
    const Matrix& data = x.data();
    const Eigen::Index n = data.rows();
    const Eigen::Index d = data.cols();

    Matrix resp = kmeans(x, k, seed).data();
    Matrix means(k, d), vars(k, d);
    Vector weights(k);
    auto m_step = [&] {
        for (int c = 0; c < k; ++c) {
            const double mass = resp.col(c).sum();
            weights(c) = std::max(mass / static_cast<double>(n), 1e-12);
            if (mass <= 0.0) continue;
            means.row(c) = (resp.col(c).transpose() * data) / mass;
            Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(d);
            for (Eigen::Index i = 0; i < n; ++i)
                v += resp(i, c) * (data.row(i) - means.row(c)).array().square().matrix();
            vars.row(c) = (v / mass).cwiseMax(kVarFloor);
        }
        weights /= weights.sum();
    };
    vars.setOnes();
    means.setZero();
    m_step();

    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iters; ++iter) {
        // E-step
        double ll = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::RowVectorXd lp(k);
            for (int c = 0; c < k; ++c) {
                double s = 0.0;
                for (Eigen::Index j = 0; j < d; ++j) {
                    const double diff = data(i, j) - means(c, j);
                    s += std::log(2.0 * std::numbers::pi * vars(c, j)) + diff * diff / vars(c, j);
                }
                lp(c) = std::log(weights(c)) - 0.5 * s;
            }
            const double lse = detail::logsumexp(lp);
            ll += lse;
            resp.row(i) = (lp.array() - lse).exp();
            resp.row(i) /= resp.row(i).sum();
        }
        m_step();
        if (std::abs(ll - prev_ll) < tol) break;
        prev_ll = ll;
    }
    return ClusterMatrix(std::move(resp), ClusterKind::soft);
}

// Projection onto the top-d principal components of the mean-centered data.
// Per-component sign: the largest-magnitude loading is positive.
inline EmbeddingMatrix pca(const EmbeddingMatrix& x, int d) {
    if (d < 0 || d > x.dim()) throw std::invalid_argument("pca: d exceeds dim");
    const Matrix& data = x.data();
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Matrix centered = data.rowwise() - mean;
    Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinV);
    Matrix components = svd.matrixV().leftCols(d);
    for (int c = 0; c < d; ++c) {
        Eigen::Index lead = 0;
        for (Eigen::Index i = 1; i < components.rows(); ++i)
            if (std::abs(components(i, c)) > std::abs(components(lead, c))) lead = i;
        if (components(lead, c) < 0.0) components.col(c) = -components.col(c);
    }
    return EmbeddingMatrix(centered * components);
}

// Fit the chosen model on the row-wise concatenation of claims and papers,
// then split the memberships back.
inline std::pair<ClusterMatrix, ClusterMatrix> joint_content_clustering(
    const EmbeddingMatrix& claims, const EmbeddingMatrix& papers,
    const ContentModelChoice& choice, int k, std::uint64_t seed) {
    if (claims.dim() != papers.dim())
        throw std::invalid_argument("joint_content_clustering: dimension mismatch");
    Matrix joint(claims.rows() + papers.rows(), claims.dim());
    joint.topRows(claims.rows()) = claims.data();
    joint.bottomRows(papers.rows()) = papers.data();

    EmbeddingMatrix space{std::move(joint)};
    if (choice.use_pca) {
        if (choice.pca_dims >= space.dim())
            throw std::invalid_argument("joint_content_clustering: pca_dims must be < dim");
        space = pca(space, choice.pca_dims);
    }

    const ClusterMatrix fitted = choice.algorithm == ContentAlgorithm::kmeans
                                     ? kmeans(space, k, seed)
                                     : gmm(space, k, seed);
    const Matrix& m = fitted.data();
    return {ClusterMatrix(m.topRows(claims.rows()), fitted.kind()),
            ClusterMatrix(m.bottomRows(papers.rows()), fitted.kind())};
}

}  // namespace claimkit
