#pragma once
// Core numerical types shared across the library: embedding matrices,
// the claims-papers link matrix, row-stochastic cluster memberships,
// and the run configuration.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace claimkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace detail {

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

// Argmax over a row; ties resolve to the lowest index.
template <typename Row>
int argmax_row(const Row& row) {
    int best = 0;
    for (int j = 1; j < static_cast<int>(row.size()); ++j) {
        if (row(j) > row(best)) best = j;
    }
    return best;
}

// Numerically stable row-wise softmax.
inline Matrix row_softmax(const Matrix& logits) {
    Matrix out(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double m = logits.row(i).maxCoeff();
        Eigen::RowVectorXd e = (logits.row(i).array() - m).exp();
        out.row(i) = e / e.sum();
    }
    return out;
}

// Gradient of a scalar objective through a row-wise softmax.
// s = softmax(z) row-wise, g = df/ds; returns df/dz.
inline Matrix softmax_backprop(const Matrix& s, const Matrix& g) {
    Matrix dz(s.rows(), s.cols());
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        const double inner = s.row(i).dot(g.row(i));
        dz.row(i) = s.row(i).cwiseProduct((g.row(i).array() - inner).matrix());
    }
    return dz;
}

}  // namespace detail

// Dense real matrix whose rows are items (claims or papers) embedded in a
// shared coordinate space. All entries must be finite.
class EmbeddingMatrix {
public:
    explicit EmbeddingMatrix(Matrix data) : data_(std::move(data)) {
        if (!detail::all_finite(data_))
            throw std::invalid_argument("EmbeddingMatrix: non-finite entry");
    }

    Eigen::Index rows() const { return data_.rows(); }
    Eigen::Index dim() const { return data_.cols(); }
    const Matrix& data() const { return data_; }

private:
    Matrix data_;
};

// Binary claims x papers interconnection matrix.
class LinkMatrix {
public:
    explicit LinkMatrix(Matrix data) : data_(std::move(data)) {
        for (Eigen::Index i = 0; i < data_.rows(); ++i)
            for (Eigen::Index j = 0; j < data_.cols(); ++j) {
                const double v = data_(i, j);
                if (v != 0.0 && v != 1.0)
                    throw std::invalid_argument("LinkMatrix: entry not in {0,1}");
            }
    }

    Eigen::Index claims() const { return data_.rows(); }
    Eigen::Index papers() const { return data_.cols(); }
    const Matrix& data() const { return data_; }

private:
    Matrix data_;
};

enum class ClusterKind { soft, hard };

// Row-stochastic membership matrix, items x clusters. Rows must sum to 1
// within 1e-9; hard matrices have exactly one non-zero entry (= 1) per row.
class ClusterMatrix {
public:
    static constexpr double kRowSumTolerance = 1e-9;

    ClusterMatrix(Matrix data, ClusterKind kind)
        : data_(std::move(data)), kind_(kind) {
        for (Eigen::Index i = 0; i < data_.rows(); ++i) {
            double sum = 0.0;
            int nonzero = 0;
            for (Eigen::Index j = 0; j < data_.cols(); ++j) {
                const double v = data_(i, j);
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::invalid_argument("ClusterMatrix: entry outside [0,1]");
                sum += v;
                if (v != 0.0) ++nonzero;
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance)
                throw std::invalid_argument("ClusterMatrix: row does not sum to 1");
            if (kind_ == ClusterKind::hard && (nonzero != 1 || data_.row(i).maxCoeff() != 1.0))
                throw std::invalid_argument("ClusterMatrix: hard row is not one-hot");
        }
    }

    Eigen::Index items() const { return data_.rows(); }
    Eigen::Index clusters() const { return data_.cols(); }
    ClusterKind kind() const { return kind_; }
    const Matrix& data() const { return data_; }

private:
    Matrix data_;
    ClusterKind kind_;
};

struct RunConfig {
    int n_clusters = 1;
    double beta = 0.3;
    double gamma = 0.5;
    double theta = 0.4;
    std::uint64_t seed = 0;
    int max_iters = 1000;
    double step_size = 0.1;
    double tolerance = 1e-6;

    void validate() const {
        if (n_clusters < 1) throw std::invalid_argument("RunConfig: n_clusters < 1");
        if (beta < 0.0) throw std::invalid_argument("RunConfig: beta < 0");
        if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("RunConfig: gamma outside [0,1]");
        if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("RunConfig: theta outside [0,1]");
        if (max_iters < 0) throw std::invalid_argument("RunConfig: max_iters < 0");
        if (step_size <= 0.0) throw std::invalid_argument("RunConfig: step_size <= 0");
        if (tolerance < 0.0) throw std::invalid_argument("RunConfig: tolerance < 0");
    }
};

// Hard cluster index per row; ties resolve to the lowest index.
inline std::vector<int> hard_assign(const ClusterMatrix& m) {
    std::vector<int> out(static_cast<std::size_t>(m.items()));
    for (Eigen::Index i = 0; i < m.items(); ++i)
        out[static_cast<std::size_t>(i)] = detail::argmax_row(m.data().row(i));
    return out;
}

inline double frobenius_norm(const Matrix& m) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) sum += m(i, j) * m(i, j);
    return std::sqrt(sum);
}

// Named deterministic RNG substream; all randomness in a run flows from one
// seed through these.
inline std::mt19937_64 substream(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const char c : name) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace claimkit
