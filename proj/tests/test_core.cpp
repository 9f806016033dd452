#include "claimkit/core.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <limits>

using namespace claimkit;

namespace {

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

// All row-stochastic rows with entries on a grid of `tenths` steps.
void enumerate_grid_rows(int k, int steps, std::vector<std::vector<int>>& out) {
    std::vector<int> row(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            row[static_cast<std::size_t>(pos)] = left;
            out.push_back(row);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            row[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, steps);
}

}  // namespace

TEST_CASE("hard_assign picks the row maximum with lowest-index ties") {
    ClusterMatrix m(rows_to_matrix({{0.1, 0.8, 0.1}, {0.0, 0.0, 1.0}}), ClusterKind::soft);
    const auto labels = hard_assign(m);
    CHECK(labels == std::vector<int>{1, 2});

    ClusterMatrix tied(rows_to_matrix({{0.5, 0.5}}), ClusterKind::soft);
    CHECK(hard_assign(tied) == std::vector<int>{0});
}

TEST_CASE("argmax is invariant under positive row rescaling") {
    auto rng = substream(7, "argmax-prop");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::RowVectorXd row(5);
        for (int j = 0; j < 5; ++j) row(j) = u(rng);
        const double c = scale(rng);
        CHECK(detail::argmax_row(row) == detail::argmax_row((c * row).eval()));
    }
}

TEST_CASE("frobenius_norm basics") {
    CHECK(frobenius_norm(Matrix::Zero(3, 4)) == 0.0);
    CHECK(frobenius_norm(Matrix::Identity(2, 2)) == Catch::Approx(std::sqrt(2.0)));

    // uniform rows have norm 1/sqrt(K) each, one-hot rows norm 1 each
    const int r = 4, k = 5;
    Matrix uniform = Matrix::Constant(r, k, 1.0 / k);
    CHECK(frobenius_norm(uniform) ==
          Catch::Approx(std::sqrt(static_cast<double>(r) / k)).epsilon(1e-12));
    Matrix onehot = Matrix::Zero(r, k);
    for (int i = 0; i < r; ++i) onehot(i, i % k) = 1.0;
    CHECK(frobenius_norm(onehot) == Catch::Approx(std::sqrt(static_cast<double>(r))).epsilon(1e-12));
}

TEST_CASE("row-stochastic Frobenius bounds on a coarse grid") {
    // R/K <= ||M||_F^2 <= R with the lower bound only at uniform and the
    // upper bound only at one-hot matrices; exhaustive on a 0.2 grid.
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::vector<int>> rows;
        enumerate_grid_rows(k, 5, rows);
        for (int r = 1; r <= 2; ++r) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
            while (true) {
                Matrix m(r, k);
                long sum_sq_int = 0;  // entries are fifths: exact integer arithmetic
                bool uniform_possible = true;
                bool all_onehot = true;
                for (int i = 0; i < r; ++i) {
                    for (int j = 0; j < k; ++j) {
                        const int v = rows[pick[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
                        m(i, j) = v / 5.0;
                        sum_sq_int += static_cast<long>(v) * v;
                        if (v != 0 && v != 5) all_onehot = false;
                    }
                    uniform_possible = uniform_possible && (5 % k == 0);
                }
                // 25*R/K <= sum_sq_int <= 25*R in exact integers
                CHECK(25 * r <= sum_sq_int * k);
                CHECK(sum_sq_int <= 25 * r);
                if (25 * r == sum_sq_int * k) {
                    REQUIRE(uniform_possible);
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < k; ++j) CHECK(m(i, j) == 1.0 / k);
                }
                if (sum_sq_int == 25 * r) CHECK(all_onehot);

                ClusterMatrix cm(m, ClusterKind::soft);
                const double f2 = frobenius_norm(cm.data()) * frobenius_norm(cm.data());
                CHECK(f2 >= static_cast<double>(r) / k - 1e-12);
                CHECK(f2 <= static_cast<double>(r) + 1e-12);

                int pos = r - 1;
                while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == rows.size()) {
                    pick[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
}

TEST_CASE("ClusterMatrix invariants are enforced") {
    CHECK_THROWS_AS(ClusterMatrix(rows_to_matrix({{0.5, 0.4}}), ClusterKind::soft),
                    std::invalid_argument);
    CHECK_THROWS_AS(ClusterMatrix(rows_to_matrix({{1.2, -0.2}}), ClusterKind::soft),
                    std::invalid_argument);
    CHECK_THROWS_AS(ClusterMatrix(rows_to_matrix({{0.5, 0.5}}), ClusterKind::hard),
                    std::invalid_argument);
    CHECK_NOTHROW(ClusterMatrix(rows_to_matrix({{0.0, 1.0}}), ClusterKind::hard));
}

TEST_CASE("LinkMatrix and EmbeddingMatrix validation") {
    CHECK_THROWS_AS(LinkMatrix(rows_to_matrix({{0.5}})), std::invalid_argument);
    CHECK_NOTHROW(LinkMatrix(rows_to_matrix({{1.0, 0.0}})));
    Matrix bad(1, 2);
    bad << 1.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(EmbeddingMatrix(bad), std::invalid_argument);
}

TEST_CASE("RunConfig validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.gamma = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.gamma = 0.5;
    cfg.beta = -0.1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.beta = 0.3;
    cfg.n_clusters = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("substream is deterministic and name-separated") {
    auto a = substream(42, "alpha");
    auto b = substream(42, "alpha");
    auto c = substream(42, "beta");
    CHECK(a() == b());
    CHECK(a() == b());
    auto a2 = substream(42, "alpha");
    CHECK(a2() != c());
}
