#pragma once
// Domain records shared by the knowledge-graph, contextualization, and IO
// layers.

#include "claimkit/core.hpp"

#include <set>
#include <string>
#include <vector>

namespace claimkit {

struct ClaimMeta {
    std::string id;
    std::string text;
    std::set<std::string> entities;
    Vector embedding;
    std::set<std::string> posting_ids;
    std::string article_id;
    std::string outlet;
};

struct PaperRecord {
    std::string id;
    std::string title;
    Vector embedding;
};

struct ArticleRecord {
    std::string id;
    std::string outlet;
    std::vector<std::string> paper_ids;  // cited papers
};

struct VerifiedClaim {
    std::string text;
    Vector embedding;
    std::set<std::string> entities;
    bool label_true = false;
};

struct ScoredItem {
    std::string ref;
    double score = 0.0;
};

struct ScoredVerified {
    std::string text;
    bool label_true = false;
    double score = 0.0;
};

// Per-claim fact-checking package; every list holds at most k entries.
struct ContextBundle {
    std::string claim_id;
    std::vector<ScoredItem> articles;
    std::vector<ScoredItem> papers;
    std::vector<ScoredVerified> verified;
};

}  // namespace claimkit
