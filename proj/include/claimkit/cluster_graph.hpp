#pragma once
// Graph-based clustering over the claims-papers link matrix: minimize
// ||C' - L P'||_F with an anti-uniformity Frobenius regularizer, either by
// adapting memberships directly (GBA) or by training small embedding-to-
// membership networks (GBT). Row-stochasticity is kept exact throughout by
// parameterizing every optimized matrix as a row-wise softmax.

#include "claimkit/core.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace claimkit {

// Which memberships the optimizer may move; the others stay fixed.
enum class OptimizedSet { both, claims_only, papers_only };

inline bool optimizes_claims(OptimizedSet v) { return v != OptimizedSet::papers_only; }
inline bool optimizes_papers(OptimizedSet v) { return v != OptimizedSet::claims_only; }

namespace detail {

constexpr double kNormEps = 1e-12;
constexpr double kLogFloor = 1e-12;
constexpr double kMinStep = 1e-15;

inline void check_shapes(const Matrix& claims, const Matrix& papers, const Matrix& link) {
    if (claims.rows() != link.rows() || papers.rows() != link.cols() ||
        claims.cols() != papers.cols())
        throw std::invalid_argument("membership/link shape mismatch");
}

inline Matrix logits_from_memberships(const Matrix& m) {
    return m.cwiseMax(kLogFloor).array().log().matrix();
}

// Gradient descent with a persistent, halving-on-increase step size. The
// returned trace (initial value plus one entry per accepted step) is
// strictly decreasing by construction.
template <typename Eval>
std::vector<double> minimize(Vector& params, Eval&& eval, int max_iters, double step_size,
                             double tolerance) {
    Vector grad(params.size());
    Vector trial_grad(params.size());
    double fx = eval(params, &grad);
    std::vector<double> trace{fx};
    double step = step_size;
    for (int it = 0; it < max_iters; ++it) {
        bool accepted = false;
        Vector trial;
        double f_new = fx;
        while (step >= kMinStep) {
            trial = params - step * grad;
            f_new = eval(trial, &trial_grad);
            if (f_new < fx) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const double improvement = fx - f_new;
        params.swap(trial);
        grad.swap(trial_grad);
        fx = f_new;
        trace.push_back(fx);
        if (improvement < tolerance) break;
    }
    return trace;
}

}  // namespace detail

inline double reconstruction_loss(const ClusterMatrix& claims, const ClusterMatrix& papers,
                                  const LinkMatrix& link) {
    detail::check_shapes(claims.data(), papers.data(), link.data());
    return frobenius_norm(claims.data() - link.data() * papers.data());
}

// Reconstruction loss minus beta times the Frobenius norms of exactly the
// optimized memberships.
inline double regularized_objective(const ClusterMatrix& claims, const ClusterMatrix& papers,
                                    const LinkMatrix& link, OptimizedSet optimized,
                                    double beta) {
    if (beta < 0.0) throw std::invalid_argument("regularized_objective: beta < 0");
    double f = reconstruction_loss(claims, papers, link);
    if (optimizes_claims(optimized)) f -= beta * frobenius_norm(claims.data());
    if (optimizes_papers(optimized)) f -= beta * frobenius_norm(papers.data());
    return f;
}

// Regularized objective as a function of the unconstrained logits of the
// optimized memberships. Parameter layout: claims logits (column-major),
// then papers logits, each present only when optimized.
class GbaObjective {
public:
    GbaObjective(OptimizedSet optimized, Matrix link, double beta, Matrix fixed_claims,
                 Matrix fixed_papers, int n_clusters)
        : optimized_(optimized),
          link_(std::move(link)),
          beta_(beta),
          fixed_claims_(std::move(fixed_claims)),
          fixed_papers_(std::move(fixed_papers)),
          n_clusters_(n_clusters) {}

    Eigen::Index param_count() const {
        Eigen::Index n = 0;
        if (optimizes_claims(optimized_)) n += link_.rows() * n_clusters_;
        if (optimizes_papers(optimized_)) n += link_.cols() * n_clusters_;
        return n;
    }

    Vector pack(const Matrix& claims_logits, const Matrix& papers_logits) const {
        Vector params(param_count());
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            params.segment(off, claims_logits.size()) =
                Eigen::Map<const Vector>(claims_logits.data(), claims_logits.size());
            off += claims_logits.size();
        }
        if (optimizes_papers(optimized_))
            params.segment(off, papers_logits.size()) =
                Eigen::Map<const Vector>(papers_logits.data(), papers_logits.size());
        return params;
    }

    std::pair<Matrix, Matrix> memberships(const Vector& params) const {
        Matrix a = fixed_claims_;
        Matrix b = fixed_papers_;
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            a = detail::row_softmax(unflatten(params, off, link_.rows()));
            off += link_.rows() * n_clusters_;
        }
        if (optimizes_papers(optimized_))
            b = detail::row_softmax(unflatten(params, off, link_.cols()));
        return {std::move(a), std::move(b)};
    }

    double value_and_grad(const Vector& params, Vector* grad) const {
        const auto [a, b] = memberships(params);
        const Matrix residual = a - link_ * b;
        const double r = frobenius_norm(residual);
        const double norm_a = frobenius_norm(a);
        const double norm_b = frobenius_norm(b);

        double f = r;
        if (optimizes_claims(optimized_)) f -= beta_ * norm_a;
        if (optimizes_papers(optimized_)) f -= beta_ * norm_b;
        if (!grad) return f;

        grad->resize(param_count());
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            Matrix ga = Matrix::Zero(a.rows(), a.cols());
            if (r > detail::kNormEps) ga += residual / r;
            ga -= (beta_ / norm_a) * a;
            const Matrix dz = detail::softmax_backprop(a, ga);
            grad->segment(off, dz.size()) = Eigen::Map<const Vector>(dz.data(), dz.size());
            off += dz.size();
        }
        if (optimizes_papers(optimized_)) {
            Matrix gb = Matrix::Zero(b.rows(), b.cols());
            if (r > detail::kNormEps) gb -= link_.transpose() * residual / r;
            gb -= (beta_ / norm_b) * b;
            const Matrix dz = detail::softmax_backprop(b, gb);
            grad->segment(off, dz.size()) = Eigen::Map<const Vector>(dz.data(), dz.size());
        }
        return f;
    }

private:
    Matrix unflatten(const Vector& params, Eigen::Index off, Eigen::Index rows) const {
        return Eigen::Map<const Matrix>(params.data() + off, rows, n_clusters_);
    }

    OptimizedSet optimized_;
    Matrix link_;
    double beta_;
    Matrix fixed_claims_;
    Matrix fixed_papers_;
    int n_clusters_;
};

struct GbaResult {
    ClusterMatrix claims;
    ClusterMatrix papers;
    std::vector<double> trace;
};

// Direct membership adaptation. Fixed sides are returned bit-identical to
// their initializations.
inline GbaResult fit_gba(OptimizedSet optimized, const LinkMatrix& link,
                         const ClusterMatrix& claims_init, const ClusterMatrix& papers_init,
                         const RunConfig& cfg) {
    cfg.validate();
    detail::check_shapes(claims_init.data(), papers_init.data(), link.data());
    const int k = static_cast<int>(claims_init.clusters());

    GbaObjective obj(optimized, link.data(), cfg.beta, claims_init.data(), papers_init.data(), k);
    Vector params = obj.pack(detail::logits_from_memberships(claims_init.data()),
                             detail::logits_from_memberships(papers_init.data()));
    auto trace = detail::minimize(
        params, [&](const Vector& p, Vector* g) { return obj.value_and_grad(p, g); },
        cfg.max_iters, cfg.step_size, cfg.tolerance);

    auto [a, b] = obj.memberships(params);
    return GbaResult{
        optimizes_claims(optimized) ? ClusterMatrix(std::move(a), ClusterKind::soft)
                                    : ClusterMatrix(claims_init.data(), claims_init.kind()),
        optimizes_papers(optimized) ? ClusterMatrix(std::move(b), ClusterKind::soft)
                                    : ClusterMatrix(papers_init.data(), papers_init.kind()),
        std::move(trace)};
}

// One-hidden-layer network with ReLU and a softmax readout; the forward
// pass of any finite input is row-stochastic.
struct MlpTransform {
    Matrix w1;               // input_dim x hidden_dim
    Eigen::RowVectorXd b1;   // hidden_dim
    Matrix w2;               // hidden_dim x output_dim
    Eigen::RowVectorXd b2;   // output_dim

    static constexpr int kDefaultHiddenDim = 64;

    static MlpTransform initialized(Eigen::Index input_dim, Eigen::Index hidden_dim,
                                    Eigen::Index output_dim, std::mt19937_64& rng) {
        MlpTransform t;
        t.w1.resize(input_dim, hidden_dim);
        t.w2.resize(hidden_dim, output_dim);
        t.b1 = Eigen::RowVectorXd::Zero(hidden_dim);
        t.b2 = Eigen::RowVectorXd::Zero(output_dim);
        const double l1 = std::sqrt(6.0 / static_cast<double>(input_dim + hidden_dim));
        const double l2 = std::sqrt(6.0 / static_cast<double>(hidden_dim + output_dim));
        std::uniform_real_distribution<double> u1(-l1, l1);
        std::uniform_real_distribution<double> u2(-l2, l2);
        for (Eigen::Index i = 0; i < t.w1.rows(); ++i)
            for (Eigen::Index j = 0; j < t.w1.cols(); ++j) t.w1(i, j) = u1(rng);
        for (Eigen::Index i = 0; i < t.w2.rows(); ++i)
            for (Eigen::Index j = 0; j < t.w2.cols(); ++j) t.w2(i, j) = u2(rng);
        return t;
    }

    Matrix forward(const Matrix& x) const {
        const Matrix h = ((x * w1).rowwise() + b1).cwiseMax(0.0);
        return detail::row_softmax((h * w2).rowwise() + b2);
    }

    Eigen::Index param_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

    Vector to_params() const {
        Vector p(param_count());
        Eigen::Index off = 0;
        p.segment(off, w1.size()) = Eigen::Map<const Vector>(w1.data(), w1.size());
        off += w1.size();
        p.segment(off, b1.size()) = b1.transpose();
        off += b1.size();
        p.segment(off, w2.size()) = Eigen::Map<const Vector>(w2.data(), w2.size());
        off += w2.size();
        p.segment(off, b2.size()) = b2.transpose();
        return p;
    }

    void from_params(const Vector& p) {
        Eigen::Index off = 0;
        Eigen::Map<Vector>(w1.data(), w1.size()) = p.segment(off, w1.size());
        off += w1.size();
        b1 = p.segment(off, b1.size()).transpose();
        off += b1.size();
        Eigen::Map<Vector>(w2.data(), w2.size()) = p.segment(off, w2.size());
        off += w2.size();
        b2 = p.segment(off, b2.size()).transpose();
    }
};

// Regularized objective as a function of the flat parameter vector of the
// trained transform(s). Layout: claims transform, then papers transform,
// each present only when optimized.
class GbtObjective {
public:
    GbtObjective(OptimizedSet optimized, Matrix claims_embed, Matrix papers_embed, Matrix link,
                 double beta, Matrix fixed_claims, Matrix fixed_papers, MlpTransform proto_claims,
                 MlpTransform proto_papers)
        : optimized_(optimized),
          claims_embed_(std::move(claims_embed)),
          papers_embed_(std::move(papers_embed)),
          link_(std::move(link)),
          beta_(beta),
          fixed_claims_(std::move(fixed_claims)),
          fixed_papers_(std::move(fixed_papers)),
          proto_claims_(std::move(proto_claims)),
          proto_papers_(std::move(proto_papers)) {}

    Eigen::Index param_count() const {
        Eigen::Index n = 0;
        if (optimizes_claims(optimized_)) n += proto_claims_.param_count();
        if (optimizes_papers(optimized_)) n += proto_papers_.param_count();
        return n;
    }

    Vector pack() const {
        Vector params(param_count());
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            params.segment(off, proto_claims_.param_count()) = proto_claims_.to_params();
            off += proto_claims_.param_count();
        }
        if (optimizes_papers(optimized_))
            params.segment(off, proto_papers_.param_count()) = proto_papers_.to_params();
        return params;
    }

    std::pair<MlpTransform, MlpTransform> transforms(const Vector& params) const {
        MlpTransform tc = proto_claims_;
        MlpTransform tp = proto_papers_;
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            tc.from_params(params.segment(off, tc.param_count()));
            off += tc.param_count();
        }
        if (optimizes_papers(optimized_)) tp.from_params(params.segment(off, tp.param_count()));
        return {std::move(tc), std::move(tp)};
    }

    std::pair<Matrix, Matrix> memberships(const Vector& params) const {
        const auto [tc, tp] = transforms(params);
        Matrix a = optimizes_claims(optimized_) ? tc.forward(claims_embed_) : fixed_claims_;
        Matrix b = optimizes_papers(optimized_) ? tp.forward(papers_embed_) : fixed_papers_;
        return {std::move(a), std::move(b)};
    }

    double value_and_grad(const Vector& params, Vector* grad) const {
        const auto [tc, tp] = transforms(params);

        Matrix pre_c, h_c, pre_p, h_p;
        Matrix a = fixed_claims_;
        Matrix b = fixed_papers_;
        if (optimizes_claims(optimized_)) {
            pre_c = (claims_embed_ * tc.w1).rowwise() + tc.b1;
            h_c = pre_c.cwiseMax(0.0);
            a = detail::row_softmax((h_c * tc.w2).rowwise() + tc.b2);
        }
        if (optimizes_papers(optimized_)) {
            pre_p = (papers_embed_ * tp.w1).rowwise() + tp.b1;
            h_p = pre_p.cwiseMax(0.0);
            b = detail::row_softmax((h_p * tp.w2).rowwise() + tp.b2);
        }

        const Matrix residual = a - link_ * b;
        const double r = frobenius_norm(residual);
        const double norm_a = frobenius_norm(a);
        const double norm_b = frobenius_norm(b);
        double f = r;
        if (optimizes_claims(optimized_)) f -= beta_ * norm_a;
        if (optimizes_papers(optimized_)) f -= beta_ * norm_b;
        if (!grad) return f;

        grad->resize(param_count());
        Eigen::Index off = 0;
        if (optimizes_claims(optimized_)) {
            Matrix ga = Matrix::Zero(a.rows(), a.cols());
            if (r > detail::kNormEps) ga += residual / r;
            ga -= (beta_ / norm_a) * a;
            off = write_mlp_grad(claims_embed_, pre_c, h_c, tc, a, ga, *grad, off);
        }
        if (optimizes_papers(optimized_)) {
            Matrix gb = Matrix::Zero(b.rows(), b.cols());
            if (r > detail::kNormEps) gb -= link_.transpose() * residual / r;
            gb -= (beta_ / norm_b) * b;
            write_mlp_grad(papers_embed_, pre_p, h_p, tp, b, gb, *grad, off);
        }
        return f;
    }

private:
    static Eigen::Index write_mlp_grad(const Matrix& x, const Matrix& pre, const Matrix& h,
                                       const MlpTransform& t, const Matrix& s,
                                       const Matrix& upstream, Vector& grad, Eigen::Index off) {
        const Matrix g_logits = detail::softmax_backprop(s, upstream);
        const Matrix dw2 = h.transpose() * g_logits;
        const Eigen::RowVectorXd db2 = g_logits.colwise().sum();
        const Matrix g_pre =
            (g_logits * t.w2.transpose()).cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
        const Matrix dw1 = x.transpose() * g_pre;
        const Eigen::RowVectorXd db1 = g_pre.colwise().sum();

        grad.segment(off, dw1.size()) = Eigen::Map<const Vector>(dw1.data(), dw1.size());
        off += dw1.size();
        grad.segment(off, db1.size()) = db1.transpose();
        off += db1.size();
        grad.segment(off, dw2.size()) = Eigen::Map<const Vector>(dw2.data(), dw2.size());
        off += dw2.size();
        grad.segment(off, db2.size()) = db2.transpose();
        return off + db2.size();
    }

    OptimizedSet optimized_;
    Matrix claims_embed_;
    Matrix papers_embed_;
    Matrix link_;
    double beta_;
    Matrix fixed_claims_;
    Matrix fixed_papers_;
    MlpTransform proto_claims_;
    MlpTransform proto_papers_;
};

struct GbtResult {
    ClusterMatrix claims;
    ClusterMatrix papers;
    std::optional<MlpTransform> claims_transform;
    std::optional<MlpTransform> papers_transform;
    std::vector<double> trace;
};

// Trains the membership transform(s); a fixed matrix must be supplied for
// exactly the non-optimized side of one-sided variants.
inline GbtResult fit_gbt(OptimizedSet optimized, const EmbeddingMatrix& claims_embed,
                         const EmbeddingMatrix& papers_embed, const LinkMatrix& link,
                         const std::optional<ClusterMatrix>& fixed_claims,
                         const std::optional<ClusterMatrix>& fixed_papers, const RunConfig& cfg,
                         int hidden_dim = MlpTransform::kDefaultHiddenDim) {
    cfg.validate();
    if (optimizes_claims(optimized) && fixed_claims)
        throw std::invalid_argument("fit_gbt: fixed matrix supplied for optimized claims side");
    if (optimizes_papers(optimized) && fixed_papers)
        throw std::invalid_argument("fit_gbt: fixed matrix supplied for optimized papers side");
    if (!optimizes_claims(optimized) && !fixed_claims)
        throw std::invalid_argument("fit_gbt: missing fixed claims matrix");
    if (!optimizes_papers(optimized) && !fixed_papers)
        throw std::invalid_argument("fit_gbt: missing fixed papers matrix");

    int k = cfg.n_clusters;
    if (fixed_claims) k = static_cast<int>(fixed_claims->clusters());
    if (fixed_papers) k = static_cast<int>(fixed_papers->clusters());

    auto rng_c = substream(cfg.seed, "gbt-claims-transform");
    auto rng_p = substream(cfg.seed, "gbt-papers-transform");
    GbtObjective obj(optimized, claims_embed.data(), papers_embed.data(), link.data(), cfg.beta,
                     fixed_claims ? fixed_claims->data() : Matrix(),
                     fixed_papers ? fixed_papers->data() : Matrix(),
                     MlpTransform::initialized(claims_embed.dim(), hidden_dim, k, rng_c),
                     MlpTransform::initialized(papers_embed.dim(), hidden_dim, k, rng_p));
    {
        const auto [a, b] = obj.memberships(obj.pack());
        detail::check_shapes(a, b, link.data());
    }

    Vector params = obj.pack();
    auto trace = detail::minimize(
        params, [&](const Vector& p, Vector* g) { return obj.value_and_grad(p, g); },
        cfg.max_iters, cfg.step_size, cfg.tolerance);

    auto [a, b] = obj.memberships(params);
    auto [tc, tp] = obj.transforms(params);
    GbtResult result{
        optimizes_claims(optimized) ? ClusterMatrix(std::move(a), ClusterKind::soft)
                                    : ClusterMatrix(fixed_claims->data(), fixed_claims->kind()),
        optimizes_papers(optimized) ? ClusterMatrix(std::move(b), ClusterKind::soft)
                                    : ClusterMatrix(fixed_papers->data(), fixed_papers->kind()),
        std::nullopt,
        std::nullopt,
        std::move(trace)};
    if (optimizes_claims(optimized)) result.claims_transform = std::move(tc);
    if (optimizes_papers(optimized)) result.papers_transform = std::move(tp);
    return result;
}

}  // namespace claimkit
