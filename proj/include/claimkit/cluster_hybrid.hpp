#pragma once
// Hybrid alternate-optimization clustering: gamma trades the link-matrix fit
// against staying close to the content-based initialization. One side is
// frozen per outer round while the other descends its block loss.

#include "claimkit/cluster_graph.hpp"

#include <optional>
#include <string_view>

namespace claimkit {

enum class HybridBlock { claims, papers };

// AO-Content / AO-Balanced / AO-Graph presets.
inline std::optional<double> hybrid_preset_gamma(std::string_view name) {
    if (name == "ao-content") return 0.1;
    if (name == "ao-balanced") return 0.5;
    if (name == "ao-graph") return 0.9;
    return std::nullopt;
}

inline double hybrid_loss(const ClusterMatrix& claims, const ClusterMatrix& papers,
                          const LinkMatrix& link, const ClusterMatrix& claims_init,
                          const ClusterMatrix& papers_init, double gamma, HybridBlock block) {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("hybrid_loss: gamma outside [0,1]");
    detail::check_shapes(claims.data(), papers.data(), link.data());
    if (claims_init.data().rows() != claims.data().rows() ||
        claims_init.data().cols() != claims.data().cols() ||
        papers_init.data().rows() != papers.data().rows() ||
        papers_init.data().cols() != papers.data().cols())
        throw std::invalid_argument("hybrid_loss: initialization shape mismatch");
    const double recon = frobenius_norm(claims.data() - link.data() * papers.data());
    const double anchor = block == HybridBlock::claims
                              ? frobenius_norm(claims.data() - claims_init.data())
                              : frobenius_norm(papers.data() - papers_init.data());
    return gamma * recon + (1.0 - gamma) * anchor;
}

// Combined AO loss over both anchors, as a function of one block's logits
// with the other block frozen. The value is the canonical combined loss so
// that accepted steps of either block share one monotone trace.
class AoObjective {
public:
    AoObjective(HybridBlock block, Matrix link, Matrix claims_anchor, Matrix papers_anchor,
                double gamma, Matrix frozen_logits)
        : block_(block),
          link_(std::move(link)),
          claims_anchor_(std::move(claims_anchor)),
          papers_anchor_(std::move(papers_anchor)),
          gamma_(gamma),
          frozen_logits_(std::move(frozen_logits)) {}

    double value_and_grad(const Vector& params, Vector* grad) const {
        const bool claims_block = block_ == HybridBlock::claims;
        const Eigen::Index rows = claims_block ? claims_anchor_.rows() : papers_anchor_.rows();
        const Eigen::Index k = claims_anchor_.cols();
        const Matrix moving = detail::row_softmax(Eigen::Map<const Matrix>(params.data(), rows, k));
        const Matrix frozen = detail::row_softmax(frozen_logits_);
        const Matrix& a = claims_block ? moving : frozen;
        const Matrix& b = claims_block ? frozen : moving;

        const Matrix residual = a - link_ * b;
        const double recon = frobenius_norm(residual);
        const Matrix da = a - claims_anchor_;
        const Matrix db = b - papers_anchor_;
        const double ra = frobenius_norm(da);
        const double rb = frobenius_norm(db);
        const double f = gamma_ * recon + (1.0 - gamma_) * (ra + rb);
        if (!grad) return f;

        Matrix g = Matrix::Zero(rows, k);
        if (claims_block) {
            if (recon > detail::kNormEps) g += gamma_ * residual / recon;
            if (ra > detail::kNormEps) g += (1.0 - gamma_) * da / ra;
        } else {
            if (recon > detail::kNormEps) g -= gamma_ * link_.transpose() * residual / recon;
            if (rb > detail::kNormEps) g += (1.0 - gamma_) * db / rb;
        }
        const Matrix dz = detail::softmax_backprop(moving, g);
        *grad = Eigen::Map<const Vector>(dz.data(), dz.size());
        return f;
    }

private:
    HybridBlock block_;
    Matrix link_;
    Matrix claims_anchor_;
    Matrix papers_anchor_;
    double gamma_;
    Matrix frozen_logits_;
};

struct AoResult {
    ClusterMatrix claims;
    ClusterMatrix papers;
    std::vector<double> trace;
};

// Alternate optimization: 50 inner gradient steps per block per outer
// round, at most 20 rounds, stopping when a round improves the combined
// loss by less than cfg.tolerance.
inline AoResult fit_ao(const ClusterMatrix& claims_init, const ClusterMatrix& papers_init,
                       const LinkMatrix& link, double gamma, const RunConfig& cfg) {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("fit_ao: gamma outside [0,1]");
    cfg.validate();
    detail::check_shapes(claims_init.data(), papers_init.data(), link.data());

    constexpr int kInnerSteps = 50;
    constexpr int kMaxOuterRounds = 20;
    const Eigen::Index k = claims_init.clusters();

    Matrix claims_logits = detail::logits_from_memberships(claims_init.data());
    Matrix papers_logits = detail::logits_from_memberships(papers_init.data());
    std::vector<double> trace;

    for (int round = 0; round < kMaxOuterRounds; ++round) {
        std::size_t accepted_before = trace.size();
        double round_start = trace.empty() ? 0.0 : trace.back();

        for (const HybridBlock block : {HybridBlock::claims, HybridBlock::papers}) {
            const bool claims_block = block == HybridBlock::claims;
            AoObjective obj(block, link.data(), claims_init.data(), papers_init.data(), gamma,
                            claims_block ? papers_logits : claims_logits);
            Matrix& moving = claims_block ? claims_logits : papers_logits;
            Vector params = Eigen::Map<const Vector>(moving.data(), moving.size());
            auto block_trace = detail::minimize(
                params, [&](const Vector& p, Vector* g) { return obj.value_and_grad(p, g); },
                kInnerSteps, cfg.step_size, cfg.tolerance);
            moving = Eigen::Map<const Matrix>(params.data(), moving.rows(), k);
            if (trace.empty()) {
                trace = std::move(block_trace);
                round_start = trace.front();
            } else {
                trace.insert(trace.end(), block_trace.begin() + 1, block_trace.end());
            }
        }

        const bool any_accepted = trace.size() > std::max<std::size_t>(accepted_before, 1);
        if (!any_accepted || round_start - trace.back() < cfg.tolerance) break;
    }

    return AoResult{ClusterMatrix(detail::row_softmax(claims_logits), ClusterKind::soft),
                    ClusterMatrix(detail::row_softmax(papers_logits), ClusterKind::soft),
                    std::move(trace)};
}

}  // namespace claimkit
