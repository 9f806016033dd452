#pragma once
// Enhanced fact-checking context: linking claims to previously verified
// claims, assembling per-claim top-k bundles, and anonymizing claims.

#include "claimkit/extract.hpp"
#include "claimkit/metrics.hpp"
#include "claimkit/records.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace claimkit {

namespace detail {

inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace detail

// STS between two claims: the embedding cosine blended 0.5/0.5 with the
// entity-set Jaccard when both entity sets are non-empty, the cosine alone
// otherwise.
inline double claim_sts(const Vector& embedding_a, const std::set<std::string>& entities_a,
                        const Vector& embedding_b, const std::set<std::string>& entities_b) {
    const double cos = sts(embedding_a, embedding_b);
    if (entities_a.empty() || entities_b.empty()) return cos;
    return 0.5 * cos + 0.5 * detail::jaccard(entities_a, entities_b);
}

// All verified claims with STS >= threshold, most similar first.
inline std::vector<ScoredVerified> link_verified(const ClaimMeta& claim,
                                                 const std::vector<VerifiedClaim>& db,
                                                 double threshold = 0.9) {
    std::vector<ScoredVerified> out;
    for (const auto& v : db) {
        const double s = claim_sts(claim.embedding, claim.entities, v.embedding, v.entities);
        if (s >= threshold) out.push_back({v.text, v.label_true, s});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredVerified& a, const ScoredVerified& b) { return a.score > b.score; });
    return out;
}

// Claims and papers sharing the target claim's cluster.
struct ClusterNeighborhood {
    std::vector<ClaimMeta> claims;
    std::vector<PaperRecord> papers;
};

// Top-k articles (the source article first), top-k in-cluster papers by
// embedding similarity, and top-k verified claims above the STS threshold.
inline ContextBundle assemble_context(const ClaimMeta& claim,
                                      const ClusterNeighborhood& neighborhood,
                                      const std::vector<VerifiedClaim>& db, int k = 3,
                                      double verified_threshold = 0.9) {
    if (k < 0) throw std::invalid_argument("assemble_context: k < 0");
    const bool member = std::any_of(neighborhood.claims.begin(), neighborhood.claims.end(),
                                    [&](const ClaimMeta& c) { return c.id == claim.id; });
    if (!member)
        throw std::invalid_argument("assemble_context: claim " + claim.id + " not in its cluster");

    ContextBundle bundle;
    bundle.claim_id = claim.id;

    // Article score: best STS of any of its claims against the target.
    std::map<std::string, double> article_score;
    for (const auto& c : neighborhood.claims) {
        const double s = claim_sts(claim.embedding, claim.entities, c.embedding, c.entities);
        auto [it, inserted] = article_score.emplace(c.article_id, s);
        if (!inserted) it->second = std::max(it->second, s);
    }
    std::vector<ScoredItem> others;
    for (const auto& [id, score] : article_score) {
        if (id == claim.article_id) continue;
        others.push_back({id, score});
    }
    std::sort(others.begin(), others.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.ref < b.ref;
    });
    if (k > 0) {
        bundle.articles.push_back({claim.article_id, article_score.at(claim.article_id)});
        for (const auto& item : others) {
            if (static_cast<int>(bundle.articles.size()) >= k) break;
            bundle.articles.push_back(item);
        }
    }

    std::vector<ScoredItem> papers;
    for (const auto& p : neighborhood.papers)
        papers.push_back({p.id, sts(claim.embedding, p.embedding)});
    std::sort(papers.begin(), papers.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.ref < b.ref;
    });
    if (static_cast<int>(papers.size()) > k) papers.resize(static_cast<std::size_t>(k));
    bundle.papers = std::move(papers);

    bundle.verified = link_verified(claim, db, verified_threshold);
    if (static_cast<int>(bundle.verified.size()) > k)
        bundle.verified.resize(static_cast<std::size_t>(k));
    return bundle;
}

// Person spans become "someone", Organization spans "some organization";
// other spans stay. Overlapping spans are rejected.
inline std::string anonymize_claim(const std::string& text, std::vector<EntitySpan> entities) {
    std::sort(entities.begin(), entities.end(),
              [](const EntitySpan& a, const EntitySpan& b) { return a.begin < b.begin; });
    std::size_t prev_end = 0;
    for (const auto& e : entities) {
        if (e.begin > e.end || e.end > text.size())
            throw std::invalid_argument("anonymize_claim: span out of bounds");
        if (e.begin < prev_end) throw std::invalid_argument("anonymize_claim: overlapping spans");
        prev_end = e.end;
    }

    std::string out;
    std::size_t cursor = 0;
    for (const auto& e : entities) {
        out.append(text, cursor, e.begin - cursor);
        switch (e.cls) {
            case EntityClass::person: out += "someone"; break;
            case EntityClass::organization: out += "some organization"; break;
            case EntityClass::other: out.append(text, e.begin, e.end - e.begin); break;
        }
        cursor = e.end;
    }
    out.append(text, cursor, text.size() - cursor);
    return out;
}

}  // namespace claimkit
