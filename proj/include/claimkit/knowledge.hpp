#pragma once
// In-cluster knowledge graph over a domain vocabulary: term co-occurrence
// edges weighted by posting popularity and outlet reputation, ranked by
// edge betweenness (causality topologies) or weighted in-degree (aspect
// topologies).

#include "claimkit/centrality.hpp"
#include "claimkit/core.hpp"
#include "claimkit/extract.hpp"
#include "claimkit/records.hpp"

#include <map>
#include <string>
#include <vector>

namespace claimkit {

enum class TermClass { disease_disorder, condition_symptom_medication_nutrient, other };

struct VocabularyTerm {
    std::string term;  // lower-cased, unique
    TermClass cls = TermClass::other;
};

enum class Topology { causality, aspect };

struct KgEdge {
    std::string source;
    std::string target;
    std::string claim_id;
    double weight = 0.0;
};

struct KnowledgeGraph {
    std::map<std::string, TermClass> nodes;
    std::vector<KgEdge> edges;  // parallel edges allowed, one per claim
    Topology topology = Topology::causality;
    std::string focal;  // aspect topologies only
};

struct RankedEdge {
    std::string source;
    std::string target;
    std::string claim_id;
    double score = 0.0;
};

// Aggregated posting popularity per claim: ln(1+raw), then min-max over the
// claims in scope. One claim: 1 when raw > 0 else 0; zero spread: 0.5.
inline std::map<std::string, double> popularity_score(const std::vector<ClaimMeta>& claims,
                                                      const std::vector<PostingRecord>& postings) {
    std::map<std::string, double> by_posting;
    for (const auto& p : postings)
        by_posting[p.id] = static_cast<double>(p.reposts + p.likes);

    std::map<std::string, double> transformed;
    for (const auto& c : claims) {
        double raw = 0.0;
        for (const auto& pid : c.posting_ids) {
            auto it = by_posting.find(pid);
            if (it != by_posting.end()) raw += it->second;
        }
        transformed[c.id] = std::log1p(raw);
    }
    if (transformed.empty()) return transformed;
    if (transformed.size() == 1) {
        auto& [id, v] = *transformed.begin();
        v = v > 0.0 ? 1.0 : 0.0;
        return transformed;
    }
    double lo = transformed.begin()->second;
    double hi = lo;
    for (const auto& [id, v] : transformed) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (auto& [id, v] : transformed) v = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return transformed;
}

// Outlet reputation lookup; unknown outlets get the neutral score 0.5.
inline double reputation_score(const ClaimMeta& claim,
                               const std::map<std::string, double>& outlet_table) {
    auto it = outlet_table.find(claim.outlet);
    return it == outlet_table.end() ? 0.5 : it->second;
}

// weight = theta * popularity + (1 - theta) * (1 - reputation): popular
// claims from low-reputation sources weigh the most.
inline double edge_weight(double popularity, double reputation, double theta = 0.4) {
    if (popularity < 0.0 || popularity > 1.0 || reputation < 0.0 || reputation > 1.0 ||
        theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("edge_weight: inputs outside [0,1]");
    return theta * popularity + (1.0 - theta) * (1.0 - reputation);
}

namespace detail {

inline bool word_char(unsigned char c) { return std::isalnum(c) != 0; }

// Case-insensitive whole-word occurrence; multi-word terms match as
// contiguous phrases.
inline bool term_occurs(const std::string& lower_text, const std::string& lower_term) {
    if (lower_term.empty()) return false;
    std::size_t pos = lower_text.find(lower_term);
    while (pos != std::string::npos) {
        const bool left_ok = pos == 0 || !word_char(static_cast<unsigned char>(lower_text[pos - 1]));
        const std::size_t end = pos + lower_term.size();
        const bool right_ok =
            end >= lower_text.size() || !word_char(static_cast<unsigned char>(lower_text[end]));
        if (left_ok && right_ok) return true;
        pos = lower_text.find(lower_term, pos + 1);
    }
    return false;
}

}  // namespace detail

inline std::vector<std::string> find_vocabulary_terms(const std::string& text,
                                                      const std::vector<VocabularyTerm>& vocab) {
    const std::string lower_text = detail::lower(text);
    std::vector<std::string> found;
    for (const auto& v : vocab)
        if (detail::term_occurs(lower_text, v.term)) found.push_back(v.term);
    return found;
}

// One edge per (claim, qualifying term pair). Causality keeps cross-class
// pairs directed condition -> disease; aspect keeps pairs containing the
// focal term, directed toward it.
inline KnowledgeGraph build_graph(const std::vector<ClaimMeta>& claims,
                                  const std::vector<VocabularyTerm>& vocab, Topology topology,
                                  const std::map<std::string, double>& weights,
                                  const std::string& focal = "") {
    KnowledgeGraph g;
    g.topology = topology;
    g.focal = focal;
    for (const auto& v : vocab) {
        if (!g.nodes.emplace(v.term, v.cls).second)
            throw std::invalid_argument("build_graph: duplicate vocabulary term " + v.term);
    }
    if (topology == Topology::aspect) {
        if (focal.empty()) throw std::invalid_argument("build_graph: aspect topology needs a focal term");
        if (!g.nodes.count(focal))
            throw std::invalid_argument("build_graph: focal term not in vocabulary");
    }

    for (const auto& claim : claims) {
        auto wit = weights.find(claim.id);
        if (wit == weights.end())
            throw std::invalid_argument("build_graph: missing weight for claim " + claim.id);
        const double w = wit->second;
        if (w < 0.0 || w > 1.0)
            throw std::invalid_argument("build_graph: weight outside [0,1] for claim " + claim.id);

        const auto found = find_vocabulary_terms(claim.text, vocab);
        for (std::size_t a = 0; a < found.size(); ++a) {
            for (std::size_t b = a + 1; b < found.size(); ++b) {
                const TermClass ca = g.nodes.at(found[a]);
                const TermClass cb = g.nodes.at(found[b]);
                if (topology == Topology::causality) {
                    const bool ab = ca == TermClass::condition_symptom_medication_nutrient &&
                                    cb == TermClass::disease_disorder;
                    const bool ba = cb == TermClass::condition_symptom_medication_nutrient &&
                                    ca == TermClass::disease_disorder;
                    if (ab)
                        g.edges.push_back({found[a], found[b], claim.id, w});
                    else if (ba)
                        g.edges.push_back({found[b], found[a], claim.id, w});
                } else {
                    if (found[a] == focal)
                        g.edges.push_back({found[b], focal, claim.id, w});
                    else if (found[b] == focal)
                        g.edges.push_back({found[a], focal, claim.id, w});
                }
            }
        }
    }
    return g;
}

// Edges (and their claims) ranked by weighted edge betweenness on the
// simple graph with parallel edges collapsed to their maximum weight;
// shortest-path distance is 1 - weight + 1e-6.
inline std::vector<RankedEdge> rank_causality(const KnowledgeGraph& g) {
    if (g.topology != Topology::causality)
        throw std::invalid_argument("rank_causality: not a causality topology");
    if (g.edges.empty()) return {};

    std::map<std::pair<std::string, std::string>, double> collapsed;
    for (const auto& e : g.edges) {
        auto [it, inserted] = collapsed.emplace(std::make_pair(e.source, e.target), e.weight);
        if (!inserted) it->second = std::max(it->second, e.weight);
    }

    std::map<std::string, int> index;
    for (const auto& [term, cls] : g.nodes) index.emplace(term, static_cast<int>(index.size()));
    std::vector<WeightedEdge> simple;
    simple.reserve(collapsed.size());
    for (const auto& [key, w] : collapsed)
        simple.push_back({index.at(key.first), index.at(key.second), 1.0 - w + 1e-6});
    const auto scores = edge_betweenness(static_cast<int>(index.size()), simple);

    std::map<std::pair<std::string, std::string>, double> score_of;
    {
        std::size_t i = 0;
        for (const auto& [key, w] : collapsed) score_of[key] = scores[i++];
    }

    std::vector<RankedEdge> out;
    out.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.push_back({e.source, e.target, e.claim_id, score_of.at({e.source, e.target})});
    std::sort(out.begin(), out.end(), [](const RankedEdge& a, const RankedEdge& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.source != b.source) return a.source < b.source;
        if (a.target != b.target) return a.target < b.target;
        return a.claim_id < b.claim_id;
    });
    return out;
}

// Aspects ranked by the focal node's weighted in-degree restricted to each
// aspect (parallel edge weights summed).
inline std::vector<RankedEdge> rank_aspect(const KnowledgeGraph& g) {
    if (g.topology != Topology::aspect)
        throw std::invalid_argument("rank_aspect: not an aspect topology");
    if (g.edges.empty()) return {};

    std::map<std::string, double> aspect_score;
    for (const auto& e : g.edges) aspect_score[e.source] += e.weight;

    std::vector<RankedEdge> out;
    out.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.push_back({e.source, e.target, e.claim_id, aspect_score.at(e.source)});
    std::sort(out.begin(), out.end(), [](const RankedEdge& a, const RankedEdge& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.source != b.source) return a.source < b.source;
        return a.claim_id < b.claim_id;
    });
    return out;
}

}  // namespace claimkit
