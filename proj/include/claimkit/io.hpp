#pragma once
// Corpus ingestion with cross-reference validation, deterministic
// serialization of embeddings and cluster matrices, and synthetic-corpus
// generation for experiments.

#include "claimkit/core.hpp"
#include "claimkit/extract.hpp"
#include "claimkit/knowledge.hpp"
#include "claimkit/records.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace claimkit {

// Malformed or inconsistent input data; the CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorpusBundle {
    std::vector<ClaimMeta> claims;      // sorted by id
    std::vector<PaperRecord> papers;    // sorted by id
    std::vector<PostingRecord> postings;
    std::vector<ArticleRecord> articles;
    EmbeddingMatrix claim_embeddings;   // rows follow claims order
    EmbeddingMatrix paper_embeddings;   // rows follow papers order
    LinkMatrix links;                   // claims x papers
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

inline std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<nlohmann::json> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline Vector json_vector(const nlohmann::json& j) {
    Vector v(j.size());
    Eigen::Index i = 0;
    for (const auto& x : j) v(i++) = x.get<double>();
    return v;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

// --- embeddings CSV (header: id,v0..v{dim-1}) --------------------------------

inline void save_embeddings(const std::filesystem::path& path,
                            const std::vector<std::string>& ids, const Matrix& data) {
    if (static_cast<Eigen::Index>(ids.size()) != data.rows())
        throw DataError("save_embeddings: id count does not match rows");
    auto out = detail::open_output(path);
    out << "id";
    for (Eigen::Index j = 0; j < data.cols(); ++j) out << ",v" << j;
    out << "\n";
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < data.cols(); ++j)
            out << ',' << detail::format_double(data(i, j));
        out << "\n";
    }
}

inline std::pair<std::vector<std::string>, Matrix> load_embeddings(
    const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": missing header");
    const auto header = detail::split(line, ',');
    if (header.empty() || header[0] != "id") throw DataError(path.string() + ": bad header");
    const std::size_t dim = header.size() - 1;

    std::vector<std::string> ids;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != dim + 1)
            throw DataError(path.string() + ": row width mismatch for id " + cells[0]);
        ids.push_back(cells[0]);
        for (std::size_t j = 1; j < cells.size(); ++j) {
            std::size_t pos = 0;
            const double v = std::stod(cells[j], &pos);
            if (pos != cells[j].size())
                throw DataError(path.string() + ": bad number '" + cells[j] + "'");
            values.push_back(v);
        }
    }
    Matrix m(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * dim + j];
    return {std::move(ids), std::move(m)};
}

// --- cluster matrix CSV (first line: "# kind=soft|hard") ---------------------

inline void save_cluster_matrix(const std::filesystem::path& path,
                                const std::vector<std::string>& ids, const ClusterMatrix& m) {
    if (static_cast<Eigen::Index>(ids.size()) != m.items())
        throw DataError("save_cluster_matrix: id count does not match rows");
    auto out = detail::open_output(path);
    out << "# kind=" << (m.kind() == ClusterKind::hard ? "hard" : "soft") << "\n";
    out << "id";
    for (Eigen::Index j = 0; j < m.clusters(); ++j) out << ",c" << j;
    out << "\n";
    for (Eigen::Index i = 0; i < m.items(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.clusters(); ++j)
            out << ',' << detail::format_double(m.data()(i, j));
        out << "\n";
    }
}

inline std::pair<std::vector<std::string>, ClusterMatrix> load_cluster_matrix(
    const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# kind=", 0) != 0)
        throw DataError(path.string() + ": missing kind line");
    const std::string kind_str = line.substr(7);
    if (kind_str != "soft" && kind_str != "hard")
        throw DataError(path.string() + ": unknown kind '" + kind_str + "'");

    if (!std::getline(in, line)) throw DataError(path.string() + ": missing header");
    const std::size_t k = detail::split(line, ',').size() - 1;
    std::vector<std::string> ids;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != k + 1)
            throw DataError(path.string() + ": row width mismatch for id " + cells[0]);
        ids.push_back(cells[0]);
        for (std::size_t j = 1; j < cells.size(); ++j) values.push_back(std::stod(cells[j]));
    }
    Matrix m(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * k + j];
    return {std::move(ids),
            ClusterMatrix(std::move(m), kind_str == "hard" ? ClusterKind::hard : ClusterKind::soft)};
}

// --- lexicons, sentences, vocabulary, outlets, verified claims ---------------

inline std::set<std::string> load_lemma_file(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.insert(detail::lower(line));
    }
    if (out.empty()) throw DataError(path.string() + ": empty lemma file");
    return out;
}

inline Lexicon load_lexicon(const std::filesystem::path& reporting_verbs_path,
                            const std::filesystem::path& science_nouns_path) {
    Lexicon lex{load_lemma_file(reporting_verbs_path), load_lemma_file(science_nouns_path)};
    lex.validate();
    return lex;
}

struct SentenceInput {
    AnnotatedSentence sentence;
    std::optional<Vector> embedding;
};

inline EntityClass entity_class_from_string(const std::string& s) {
    if (s == "Person" || s == "person") return EntityClass::person;
    if (s == "Organization" || s == "organization") return EntityClass::organization;
    if (s == "Other" || s == "other") return EntityClass::other;
    throw DataError("unknown entity class '" + s + "'");
}

inline std::vector<SentenceInput> load_sentences(const std::filesystem::path& path) {
    std::vector<SentenceInput> out;
    for (const auto& j : detail::read_jsonl(path)) {
        SentenceInput si;
        si.sentence.id = j.at("id").get<std::string>();
        si.sentence.text = j.at("text").get<std::string>();
        si.sentence.root_verb = j.at("root_verb").get<std::string>();
        if (j.contains("nsubj") && !j["nsubj"].is_null())
            si.sentence.nsubj = j["nsubj"].get<std::string>();
        if (j.contains("dobj") && !j["dobj"].is_null())
            si.sentence.dobj = j["dobj"].get<std::string>();
        if (j.contains("entities"))
            for (const auto& e : j["entities"])
                si.sentence.entities.push_back({e.at("begin").get<std::size_t>(),
                                                e.at("end").get<std::size_t>(),
                                                entity_class_from_string(e.at("class").get<std::string>())});
        if (j.contains("embedding")) si.embedding = detail::json_vector(j["embedding"]);
        try {
            si.sentence.validate();
        } catch (const std::invalid_argument& e) {
            throw DataError(path.string() + ": " + e.what());
        }
        out.push_back(std::move(si));
    }
    std::sort(out.begin(), out.end(),
              [](const SentenceInput& a, const SentenceInput& b) { return a.sentence.id < b.sentence.id; });
    return out;
}

inline TermClass term_class_from_string(const std::string& s) {
    if (s == "disease_disorder") return TermClass::disease_disorder;
    if (s == "condition_symptom_medication_nutrient")
        return TermClass::condition_symptom_medication_nutrient;
    if (s == "other") return TermClass::other;
    throw DataError("unknown term class '" + s + "'");
}

inline std::string term_class_to_string(TermClass c) {
    switch (c) {
        case TermClass::disease_disorder: return "disease_disorder";
        case TermClass::condition_symptom_medication_nutrient:
            return "condition_symptom_medication_nutrient";
        case TermClass::other: return "other";
    }
    return "other";
}

inline std::vector<VocabularyTerm> load_vocabulary(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::vector<VocabularyTerm> out;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split(line, '\t');
        if (cells.size() != 2) throw DataError(path.string() + ": expected 'term<TAB>class'");
        const std::string term = detail::lower(cells[0]);
        if (!seen.insert(term).second)
            throw DataError(path.string() + ": duplicate term '" + term + "'");
        out.push_back({term, term_class_from_string(cells[1])});
    }
    return out;
}

inline std::map<std::string, double> load_outlet_table(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split(line, '\t');
        if (cells.size() != 2) throw DataError(path.string() + ": expected 'outlet<TAB>score'");
        const double score = std::stod(cells[1]);
        if (score < 0.0 || score > 1.0)
            throw DataError(path.string() + ": score outside [0,1] for outlet " + cells[0]);
        out[cells[0]] = score;
    }
    return out;
}

inline std::vector<VerifiedClaim> load_verified_claims(const std::filesystem::path& path) {
    std::vector<VerifiedClaim> out;
    for (const auto& j : detail::read_jsonl(path)) {
        VerifiedClaim v;
        v.text = j.at("text").get<std::string>();
        const std::string label = j.at("label").get<std::string>();
        if (label != "True" && label != "False")
            throw DataError(path.string() + ": label must be True or False");
        v.label_true = label == "True";
        v.embedding = detail::json_vector(j.at("embedding"));
        if (j.contains("entities"))
            for (const auto& e : j["entities"]) v.entities.insert(e.get<std::string>());
        out.push_back(std::move(v));
    }
    return out;
}

// --- corpus ------------------------------------------------------------------

namespace detail {

template <typename T>
void sort_and_check_unique(std::vector<T>& items, const std::string& what) {
    std::sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].id == items[i - 1].id)
            throw DataError("duplicate " + what + " id: " + items[i].id);
}

// Rows of `loaded` reordered to match `ids`; every id must appear exactly once.
inline Matrix align_embeddings(const std::pair<std::vector<std::string>, Matrix>& loaded,
                               const std::vector<std::string>& ids, const std::string& what) {
    std::map<std::string, Eigen::Index> row_of;
    for (std::size_t i = 0; i < loaded.first.size(); ++i) {
        if (!row_of.emplace(loaded.first[i], static_cast<Eigen::Index>(i)).second)
            throw DataError("duplicate embedding row for " + what + " " + loaded.first[i]);
    }
    if (loaded.first.size() != ids.size())
        throw DataError(what + " embeddings: expected " + std::to_string(ids.size()) +
                        " rows, found " + std::to_string(loaded.first.size()));
    Matrix out(static_cast<Eigen::Index>(ids.size()), loaded.second.cols());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto it = row_of.find(ids[i]);
        if (it == row_of.end())
            throw DataError("missing embedding for " + what + " " + ids[i]);
        out.row(static_cast<Eigen::Index>(i)) = loaded.second.row(it->second);
    }
    return out;
}

}  // namespace detail

// Loads a corpus directory (claims.jsonl, papers.jsonl, articles.jsonl,
// postings.jsonl plus the three embeddings CSVs), validates every
// cross-reference, and builds C, P, and L with items sorted by id.
inline CorpusBundle load_corpus(const std::filesystem::path& dir) {
    std::vector<ClaimMeta> claims;
    for (const auto& j : detail::read_jsonl(dir / "claims.jsonl")) {
        ClaimMeta c;
        c.id = j.at("id").get<std::string>();
        c.text = j.at("text").get<std::string>();
        c.article_id = j.at("article_id").get<std::string>();
        if (j.contains("entities"))
            for (const auto& e : j["entities"]) c.entities.insert(e.get<std::string>());
        if (j.contains("posting_ids"))
            for (const auto& p : j["posting_ids"]) c.posting_ids.insert(p.get<std::string>());
        claims.push_back(std::move(c));
    }
    std::vector<PaperRecord> papers;
    for (const auto& j : detail::read_jsonl(dir / "papers.jsonl"))
        papers.push_back({j.at("id").get<std::string>(), j.at("title").get<std::string>(), Vector()});
    std::vector<ArticleRecord> articles;
    for (const auto& j : detail::read_jsonl(dir / "articles.jsonl")) {
        ArticleRecord a;
        a.id = j.at("id").get<std::string>();
        a.outlet = j.at("outlet").get<std::string>();
        for (const auto& p : j.at("paper_ids")) a.paper_ids.push_back(p.get<std::string>());
        std::sort(a.paper_ids.begin(), a.paper_ids.end());
        articles.push_back(std::move(a));
    }
    std::vector<PostingRecord> postings;
    for (const auto& j : detail::read_jsonl(dir / "postings.jsonl")) {
        PostingRecord p;
        p.id = j.at("id").get<std::string>();
        p.text = j.at("text").get<std::string>();
        p.reposts = j.at("reposts").get<long>();
        p.likes = j.at("likes").get<long>();
        if (p.reposts < 0 || p.likes < 0)
            throw DataError("posting " + p.id + ": negative popularity count");
        for (const auto& s : j.at("target_sentence_ids"))
            p.target_sentence_ids.insert(s.get<std::string>());
        postings.push_back(std::move(p));
    }

    detail::sort_and_check_unique(claims, "claim");
    detail::sort_and_check_unique(papers, "paper");
    detail::sort_and_check_unique(articles, "article");
    detail::sort_and_check_unique(postings, "posting");

    std::vector<std::string> claim_ids, paper_ids, posting_ids;
    for (const auto& c : claims) claim_ids.push_back(c.id);
    for (const auto& p : papers) paper_ids.push_back(p.id);
    for (const auto& p : postings) posting_ids.push_back(p.id);

    Matrix c_embed =
        detail::align_embeddings(load_embeddings(dir / "claim_embeddings.csv"), claim_ids, "claim");
    Matrix p_embed =
        detail::align_embeddings(load_embeddings(dir / "paper_embeddings.csv"), paper_ids, "paper");
    Matrix post_embed = detail::align_embeddings(load_embeddings(dir / "posting_embeddings.csv"),
                                                 posting_ids, "posting");
    if (c_embed.cols() != p_embed.cols() || c_embed.cols() != post_embed.cols())
        throw DataError("dimension mismatch between claim, paper, and posting embeddings");

    for (std::size_t i = 0; i < claims.size(); ++i)
        claims[i].embedding = c_embed.row(static_cast<Eigen::Index>(i)).transpose();
    for (std::size_t i = 0; i < papers.size(); ++i)
        papers[i].embedding = p_embed.row(static_cast<Eigen::Index>(i)).transpose();
    for (std::size_t i = 0; i < postings.size(); ++i)
        postings[i].embedding = post_embed.row(static_cast<Eigen::Index>(i)).transpose();

    std::map<std::string, std::size_t> article_of, paper_of;
    std::set<std::string> posting_set(posting_ids.begin(), posting_ids.end());
    std::set<std::string> claim_set(claim_ids.begin(), claim_ids.end());
    for (std::size_t i = 0; i < articles.size(); ++i) article_of[articles[i].id] = i;
    for (std::size_t i = 0; i < papers.size(); ++i) paper_of[papers[i].id] = i;

    for (const auto& a : articles)
        for (const auto& pid : a.paper_ids)
            if (!paper_of.count(pid))
                throw DataError("dangling reference: article " + a.id + " cites missing paper " + pid);
    for (const auto& p : postings)
        for (const auto& sid : p.target_sentence_ids)
            if (!claim_set.count(sid))
                throw DataError("dangling reference: posting " + p.id + " targets missing claim " + sid);

    Matrix links = Matrix::Zero(static_cast<Eigen::Index>(claims.size()),
                                static_cast<Eigen::Index>(papers.size()));
    for (std::size_t i = 0; i < claims.size(); ++i) {
        auto& c = claims[i];
        auto ait = article_of.find(c.article_id);
        if (ait == article_of.end())
            throw DataError("dangling reference: claim " + c.id + " references missing article " +
                            c.article_id);
        c.outlet = articles[ait->second].outlet;
        for (const auto& pid : c.posting_ids)
            if (!posting_set.count(pid))
                throw DataError("dangling reference: claim " + c.id + " references missing posting " +
                                pid);
        for (const auto& pid : articles[ait->second].paper_ids)
            links(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(paper_of.at(pid))) = 1.0;
    }

    return CorpusBundle{std::move(claims),
                        std::move(papers),
                        std::move(postings),
                        std::move(articles),
                        EmbeddingMatrix(std::move(c_embed)),
                        EmbeddingMatrix(std::move(p_embed)),
                        LinkMatrix(std::move(links))};
}

inline void save_corpus(const std::filesystem::path& dir, const CorpusBundle& bundle) {
    std::filesystem::create_directories(dir);
    {
        auto out = detail::open_output(dir / "claims.jsonl");
        for (const auto& c : bundle.claims) {
            nlohmann::json j;
            j["id"] = c.id;
            j["text"] = c.text;
            j["entities"] = c.entities;
            j["article_id"] = c.article_id;
            j["posting_ids"] = c.posting_ids;
            out << j.dump() << "\n";
        }
    }
    {
        auto out = detail::open_output(dir / "papers.jsonl");
        for (const auto& p : bundle.papers) {
            nlohmann::json j;
            j["id"] = p.id;
            j["title"] = p.title;
            out << j.dump() << "\n";
        }
    }
    {
        auto out = detail::open_output(dir / "articles.jsonl");
        for (const auto& a : bundle.articles) {
            nlohmann::json j;
            j["id"] = a.id;
            j["outlet"] = a.outlet;
            j["paper_ids"] = a.paper_ids;
            out << j.dump() << "\n";
        }
    }
    {
        auto out = detail::open_output(dir / "postings.jsonl");
        for (const auto& p : bundle.postings) {
            nlohmann::json j;
            j["id"] = p.id;
            j["text"] = p.text;
            j["reposts"] = p.reposts;
            j["likes"] = p.likes;
            j["target_sentence_ids"] = p.target_sentence_ids;
            out << j.dump() << "\n";
        }
    }
    std::vector<std::string> claim_ids, paper_ids, posting_ids;
    for (const auto& c : bundle.claims) claim_ids.push_back(c.id);
    for (const auto& p : bundle.papers) paper_ids.push_back(p.id);
    for (const auto& p : bundle.postings) posting_ids.push_back(p.id);
    save_embeddings(dir / "claim_embeddings.csv", claim_ids, bundle.claim_embeddings.data());
    save_embeddings(dir / "paper_embeddings.csv", paper_ids, bundle.paper_embeddings.data());
    Matrix post_embed(static_cast<Eigen::Index>(bundle.postings.size()),
                      bundle.claim_embeddings.data().cols());
    for (std::size_t i = 0; i < bundle.postings.size(); ++i)
        post_embed.row(static_cast<Eigen::Index>(i)) = bundle.postings[i].embedding.transpose();
    save_embeddings(dir / "posting_embeddings.csv", posting_ids, post_embed);
}

// --- synthetic corpus ---------------------------------------------------------

struct SynthParams {
    int n_clusters = 5;
    int n_claims = 200;
    int n_papers = 100;
    int dim = 16;
    double noise = 0.5;
    double link_noise = 0.05;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    CorpusBundle bundle;
    std::vector<int> claim_labels;
    std::vector<int> paper_labels;
    Matrix blob_centers;  // n_clusters x dim
};

namespace detail {

inline std::string padded_id(const char* prefix, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%05d", prefix, i);
    return buf;
}

}  // namespace detail

// K Gaussian blobs shared by claims and papers; each claim links to one
// paper of its own blob with probability 1 - link_noise, otherwise of a
// uniformly random blob.
inline SyntheticCorpus generate_synthetic(const SynthParams& p) {
    if (p.n_clusters < 1 || p.n_claims < 1 || p.n_papers < 1 || p.dim < 1)
        throw std::invalid_argument("generate_synthetic: counts must be positive");
    if (p.n_clusters > std::min(p.n_claims, p.n_papers))
        throw std::invalid_argument("generate_synthetic: more clusters than items");
    if (p.noise < 0.0 || p.link_noise < 0.0 || p.link_noise > 1.0)
        throw std::invalid_argument("generate_synthetic: invalid noise level");

    const int k = p.n_clusters;
    std::normal_distribution<double> gauss(0.0, 1.0);

    Matrix centers(k, p.dim);
    {
        auto rng = substream(p.seed, "synth-centers");
        for (int c = 0; c < k; ++c)
            for (int d = 0; d < p.dim; ++d) centers(c, d) = 4.0 * gauss(rng);
    }

    auto make_points = [&](int n, const char* stream) {
        auto rng = substream(p.seed, stream);
        Matrix points(n, p.dim);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < p.dim; ++d)
                points(i, d) = centers(i % k, d) + p.noise * gauss(rng);
        return points;
    };
    Matrix c_embed = make_points(p.n_claims, "synth-claim-points");
    Matrix p_embed = make_points(p.n_papers, "synth-paper-points");

    std::vector<int> claim_labels(static_cast<std::size_t>(p.n_claims));
    std::vector<int> paper_labels(static_cast<std::size_t>(p.n_papers));
    for (int i = 0; i < p.n_claims; ++i) claim_labels[static_cast<std::size_t>(i)] = i % k;
    for (int j = 0; j < p.n_papers; ++j) paper_labels[static_cast<std::size_t>(j)] = j % k;

    // papers of each blob, for link targeting
    std::vector<std::vector<int>> blob_papers(static_cast<std::size_t>(k));
    for (int j = 0; j < p.n_papers; ++j)
        blob_papers[static_cast<std::size_t>(j % k)].push_back(j);

    auto link_rng = substream(p.seed, "synth-links");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> blob_pick(0, k - 1);
    std::vector<int> linked_paper(static_cast<std::size_t>(p.n_claims));
    Matrix links = Matrix::Zero(p.n_claims, p.n_papers);
    for (int i = 0; i < p.n_claims; ++i) {
        int blob = claim_labels[static_cast<std::size_t>(i)];
        if (unit(link_rng) < p.link_noise) blob = blob_pick(link_rng);
        const auto& pool = blob_papers[static_cast<std::size_t>(blob)];
        std::uniform_int_distribution<int> paper_pick(0, static_cast<int>(pool.size()) - 1);
        const int paper = pool[static_cast<std::size_t>(paper_pick(link_rng))];
        linked_paper[static_cast<std::size_t>(i)] = paper;
        links(i, paper) = 1.0;
    }

    auto posting_rng = substream(p.seed, "synth-postings");
    std::uniform_int_distribution<long> count_pick(0, 500);
    auto outlet_rng = substream(p.seed, "synth-outlets");
    std::uniform_int_distribution<int> outlet_pick(0, 4);
    auto posting_noise_rng = substream(p.seed, "synth-posting-points");

    CorpusBundle bundle{{},
                        {},
                        {},
                        {},
                        EmbeddingMatrix(c_embed),
                        EmbeddingMatrix(p_embed),
                        LinkMatrix(links)};
    for (int i = 0; i < p.n_claims; ++i) {
        const int blob = claim_labels[static_cast<std::size_t>(i)];
        ClaimMeta c;
        c.id = detail::padded_id("claim", i);
        c.text = "Synthetic claim " + std::to_string(i) + " reports that factor-" +
                 std::to_string(blob) + " influences ailment-" + std::to_string(blob) + ".";
        c.entities = {"factor-" + std::to_string(blob), "ailment-" + std::to_string(blob)};
        c.embedding = c_embed.row(i).transpose();
        c.article_id = detail::padded_id("art", i);
        c.posting_ids = {detail::padded_id("post", i)};
        c.outlet = "outlet-" + std::to_string(outlet_pick(outlet_rng));
        bundle.claims.push_back(std::move(c));

        PostingRecord post;
        post.id = detail::padded_id("post", i);
        post.text = "Re-posting of claim " + std::to_string(i);
        post.reposts = count_pick(posting_rng);
        post.likes = count_pick(posting_rng);
        post.target_sentence_ids = {detail::padded_id("claim", i)};
        post.embedding = c_embed.row(i).transpose();
        for (Eigen::Index d = 0; d < post.embedding.size(); ++d)
            post.embedding(d) += 0.05 * gauss(posting_noise_rng);
        bundle.postings.push_back(std::move(post));

        ArticleRecord art;
        art.id = detail::padded_id("art", i);
        art.outlet = bundle.claims.back().outlet;
        art.paper_ids = {detail::padded_id("paper", linked_paper[static_cast<std::size_t>(i)])};
        bundle.articles.push_back(std::move(art));
    }
    for (int j = 0; j < p.n_papers; ++j) {
        PaperRecord paper;
        paper.id = detail::padded_id("paper", j);
        paper.title = "Synthetic paper " + std::to_string(j) + " on factor-" +
                      std::to_string(j % k) + " and ailment-" + std::to_string(j % k);
        paper.embedding = p_embed.row(j).transpose();
        bundle.papers.push_back(std::move(paper));
    }

    return SyntheticCorpus{std::move(bundle), std::move(claim_labels), std::move(paper_labels),
                           std::move(centers)};
}

// Vocabulary, outlet scores, verified claims, annotated sentences, and
// lexicon files matching a synthetic corpus, so that every pipeline stage
// can run on generator output alone.
inline void write_synthetic_sidecars(const std::filesystem::path& dir, const SyntheticCorpus& s) {
    std::filesystem::create_directories(dir);
    const int k = static_cast<int>(s.blob_centers.rows());
    {
        auto out = detail::open_output(dir / "vocabulary.tsv");
        for (int b = 0; b < k; ++b)
            out << "factor-" << b << "\tcondition_symptom_medication_nutrient\n";
        for (int b = 0; b < k; ++b) out << "ailment-" << b << "\tdisease_disorder\n";
    }
    {
        auto out = detail::open_output(dir / "outlets.tsv");
        out << "outlet-0\t0.1\noutlet-1\t0.5\noutlet-2\t0.9\n";  // outlets 3 and 4 stay unknown
    }
    {
        auto out = detail::open_output(dir / "verified.jsonl");
        for (int b = 0; b < k; ++b) {
            nlohmann::json j;
            j["text"] = "Verified claim: factor-" + std::to_string(b) + " influences ailment-" +
                        std::to_string(b) + ".";
            j["label"] = b % 2 == 0 ? "False" : "True";
            std::vector<double> e(s.blob_centers.cols());
            for (Eigen::Index d = 0; d < s.blob_centers.cols(); ++d) e[static_cast<std::size_t>(d)] = s.blob_centers(b, d);
            j["embedding"] = e;
            j["entities"] = {"factor-" + std::to_string(b), "ailment-" + std::to_string(b)};
            out << j.dump() << "\n";
        }
    }
    {
        auto out = detail::open_output(dir / "sentences.jsonl");
        for (std::size_t i = 0; i < s.bundle.claims.size(); ++i) {
            const auto& c = s.bundle.claims[i];
            nlohmann::json j;
            j["id"] = c.id;
            j["text"] = c.text;
            j["root_verb"] = i % 2 == 0 ? "report" : "mention";
            j["nsubj"] = i % 3 == 0 ? "study" : "blogger";
            j["entities"] = nlohmann::json::array();
            std::vector<double> e(c.embedding.size());
            for (Eigen::Index d = 0; d < c.embedding.size(); ++d) e[static_cast<std::size_t>(d)] = c.embedding(d);
            j["embedding"] = e;
            out << j.dump() << "\n";
        }
    }
    {
        auto out = detail::open_output(dir / "reporting_verbs.txt");
        out << "report\nclaim\nsuggest\nprove\n";
    }
    {
        auto out = detail::open_output(dir / "science_nouns.txt");
        out << "study\nresearcher\nsurvey\n";
    }
}

}  // namespace claimkit
