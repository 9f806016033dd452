#pragma once
// Baseline claim extractors: the grammar rule over dependency annotations
// and the context rule over posting similarity and popularity.
// Annotation (POS/dependency/NER) is an input, never computed here.

#include "claimkit/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace claimkit {

enum class EntityClass { person, organization, other };

struct EntitySpan {
    std::size_t begin = 0;  // byte offsets into the sentence text
    std::size_t end = 0;    // exclusive
    EntityClass cls = EntityClass::other;
};

struct AnnotatedSentence {
    std::string id;
    std::string text;
    std::string root_verb;  // lemma, non-empty
    std::optional<std::string> nsubj;
    std::optional<std::string> dobj;
    std::vector<EntitySpan> entities;

    void validate() const {
        if (root_verb.empty()) throw std::invalid_argument("sentence " + id + ": empty root verb");
        for (const auto& e : entities)
            if (e.begin > e.end || e.end > text.size())
                throw std::invalid_argument("sentence " + id + ": entity span out of bounds");
    }
};

struct Lexicon {
    std::set<std::string> reporting_verbs;   // RV, lower-cased lemmas
    std::set<std::string> science_nouns;     // E (noun part), lower-cased lemmas

    void validate() const {
        if (reporting_verbs.empty() || science_nouns.empty())
            throw std::invalid_argument("Lexicon: empty lemma set");
    }
};

struct PostingRecord {
    std::string id;
    std::string text;
    Vector embedding;
    long reposts = 0;
    long likes = 0;
    std::set<std::string> target_sentence_ids;
};

namespace detail {

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline std::vector<std::string> alnum_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (const unsigned char c : s) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// Cosine similarity clamped to [0,1]; zero-norm vectors compare as 0.
inline double clamped_cosine(const Vector& u, const Vector& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    const double c = u.dot(v) / (nu * nv);
    return std::clamp(c, 0.0, 1.0);
}

// An argument lemma belongs to E if it is a listed science noun or if it
// appears as a word inside a Person/Organization entity mention.
inline bool argument_in_entity_set(const std::optional<std::string>& lemma,
                                   const AnnotatedSentence& s, const Lexicon& lex) {
    if (!lemma) return false;
    const std::string l = lower(*lemma);
    if (lex.science_nouns.count(l)) return true;
    for (const auto& e : s.entities) {
        if (e.cls == EntityClass::other) continue;
        const std::string surface = s.text.substr(e.begin, e.end - e.begin);
        for (const auto& tok : alnum_tokens(surface))
            if (tok == l) return true;
    }
    return false;
}

}  // namespace detail

// (root in RV) and (nsubj in E or dobj in E). Absent arguments are
// non-members.
inline bool grammar_heuristic(const AnnotatedSentence& s, const Lexicon& lex) {
    if (!lex.reporting_verbs.count(detail::lower(s.root_verb))) return false;
    return detail::argument_in_entity_set(s.nsubj, s, lex) ||
           detail::argument_in_entity_set(s.dobj, s, lex);
}

// Popularity of each posting referencing the sentence, normalized to a
// distribution. All-zero raw popularity degenerates to uniform.
inline std::map<std::string, double> normalized_popularity(
    const std::vector<PostingRecord>& postings, const std::string& sentence_id) {
    std::map<std::string, double> raw;
    double total = 0.0;
    for (const auto& p : postings) {
        if (!p.target_sentence_ids.count(sentence_id)) continue;
        if (p.reposts < 0 || p.likes < 0)
            throw std::invalid_argument("posting " + p.id + ": negative popularity count");
        const double r = static_cast<double>(p.reposts + p.likes);
        raw[p.id] = r;
        total += r;
    }
    if (raw.empty()) return raw;
    for (auto& [id, r] : raw)
        r = total > 0.0 ? r / total : 1.0 / static_cast<double>(raw.size());
    return raw;
}

// True iff some posting referencing the sentence has
// cosine(s, p) * pop(p) >= threshold. No referencing posting: false.
inline bool context_heuristic(const Vector& sentence_embedding, const std::string& sentence_id,
                              const std::vector<PostingRecord>& postings,
                              double threshold = 0.9) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("context_heuristic: threshold outside [0,1]");
    const auto pop = normalized_popularity(postings, sentence_id);
    for (const auto& p : postings) {
        auto it = pop.find(p.id);
        if (it == pop.end()) continue;
        const double sim = detail::clamped_cosine(sentence_embedding, p.embedding);
        if (sim * it->second >= threshold) return true;
    }
    return false;
}

}  // namespace claimkit
