#include "claimkit/extract.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace claimkit;

namespace {

Lexicon test_lexicon() {
    return Lexicon{{"claim", "prove", "report", "say"}, {"researcher", "survey", "study"}};
}

AnnotatedSentence sentence(std::string root, std::optional<std::string> nsubj,
                           std::optional<std::string> dobj) {
    AnnotatedSentence s;
    s.id = "s";
    s.text = "placeholder text";
    s.root_verb = std::move(root);
    s.nsubj = std::move(nsubj);
    s.dobj = std::move(dobj);
    return s;
}

PostingRecord posting(std::string id, Vector embedding, long reposts, long likes,
                      std::string target) {
    PostingRecord p;
    p.id = std::move(id);
    p.embedding = std::move(embedding);
    p.reposts = reposts;
    p.likes = likes;
    p.target_sentence_ids = {std::move(target)};
    return p;
}

}  // namespace

TEST_CASE("grammar_heuristic spec examples") {
    const auto lex = test_lexicon();
    CHECK(grammar_heuristic(sentence("claim", "researcher", std::nullopt), lex));
    CHECK_FALSE(grammar_heuristic(sentence("eat", "researcher", std::nullopt), lex));
    CHECK(grammar_heuristic(sentence("prove", std::nullopt, "survey"), lex));
}

TEST_CASE("grammar_heuristic matches the truth table over membership bits") {
    const auto lex = test_lexicon();
    // (root in RV) x (nsubj in E) x (dobj in E), with brute-force oracle
    for (int root_bit = 0; root_bit < 2; ++root_bit) {
        for (int nsubj_bit = 0; nsubj_bit < 2; ++nsubj_bit) {
            for (int dobj_bit = 0; dobj_bit < 2; ++dobj_bit) {
                const auto s = sentence(root_bit ? "report" : "devour",
                                        nsubj_bit ? "study" : "cat",
                                        dobj_bit ? "survey" : "mouse");
                const bool expected = root_bit && (nsubj_bit || dobj_bit);
                CHECK(grammar_heuristic(s, lex) == expected);
            }
        }
    }
}

TEST_CASE("grammar_heuristic verdict depends only on the membership bits") {
    const auto lex = test_lexicon();
    // Same bits, different surface material.
    auto a = sentence("say", "researcher", std::nullopt);
    auto b = sentence("claim", "survey", "banana");
    CHECK(grammar_heuristic(a, lex) == grammar_heuristic(b, lex));

    auto c = sentence("walk", std::nullopt, std::nullopt);
    auto d = sentence("jump", "dog", "bone");
    CHECK(grammar_heuristic(c, lex) == grammar_heuristic(d, lex));
}

TEST_CASE("grammar_heuristic accepts Person/Organization arguments") {
    const auto lex = test_lexicon();
    auto s = sentence("say", "pasteur", std::nullopt);
    s.text = "Louis Pasteur says germs cause disease";
    s.entities.push_back({0, 13, EntityClass::person});  // "Louis Pasteur"
    CHECK(grammar_heuristic(s, lex));

    s.entities[0].cls = EntityClass::other;
    CHECK_FALSE(grammar_heuristic(s, lex));
}

TEST_CASE("normalized_popularity examples and distribution property") {
    std::vector<PostingRecord> ps;
    ps.push_back(posting("a", Vector::Ones(2), 20, 10, "s1"));
    ps.push_back(posting("b", Vector::Ones(2), 5, 5, "s1"));
    const auto pop = normalized_popularity(ps, "s1");
    CHECK(pop.at("a") == Catch::Approx(0.75).epsilon(1e-15));
    CHECK(pop.at("b") == Catch::Approx(0.25).epsilon(1e-15));

    const auto single = normalized_popularity({posting("a", Vector::Ones(2), 3, 0, "s")}, "s");
    CHECK(single.at("a") == 1.0);

    std::vector<PostingRecord> zeros;
    for (const char* id : {"x", "y", "z"}) zeros.push_back(posting(id, Vector::Ones(2), 0, 0, "s"));
    const auto uniform = normalized_popularity(zeros, "s");
    for (const auto& [id, v] : uniform) CHECK(v == Catch::Approx(1.0 / 3).epsilon(1e-15));

    auto rng = substream(3, "pop-prop");
    std::uniform_int_distribution<long> count(0, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PostingRecord> random;
        for (int i = 0; i < 6; ++i)
            random.push_back(posting("p" + std::to_string(i), Vector::Ones(2), count(rng),
                                     count(rng), "s"));
        const auto dist = normalized_popularity(random, "s");
        double sum = 0.0;
        for (const auto& [id, v] : dist) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("context_heuristic spec examples") {
    Vector s(2);
    s << 1.0, 0.0;

    // identical embedding, single posting: sim * pop = 1 >= 0.9
    CHECK(context_heuristic(s, "s1", {posting("a", s, 10, 0, "s1")}));

    // orthogonal embedding
    Vector orth(2);
    orth << 0.0, 1.0;
    CHECK_FALSE(context_heuristic(s, "s1", {posting("a", orth, 10, 0, "s1")}));

    // sim 0.95 with pop 0.5 -> 0.475 < 0.9
    Vector close(2);
    close << 0.95, std::sqrt(1.0 - 0.95 * 0.95);
    std::vector<PostingRecord> ps{posting("a", close, 5, 0, "s1"), posting("b", orth, 5, 0, "s1")};
    CHECK_FALSE(context_heuristic(s, "s1", ps));

    // no posting references the sentence
    CHECK_FALSE(context_heuristic(s, "other", ps));
}

TEST_CASE("context_heuristic threshold boundary at 0.9") {
    Vector s(2);
    s << 1.0, 0.0;
    // identical embedding (sim clamps to exactly 1) with raw popularity 9 vs 1
    std::vector<PostingRecord> ps{posting("a", s, 9, 0, "s1"),
                                  posting("b", Vector::Ones(2), 1, 0, "s1")};
    CHECK(context_heuristic(s, "s1", ps, 0.9));           // 1.0 * 0.9 == 0.9
    CHECK_FALSE(context_heuristic(s, "s1", ps, 0.95));    // 0.9 < 0.95; b scores ~0.0707
}

TEST_CASE("context_heuristic equals thresholding the max product") {
    auto rng = substream(11, "ctx-prop");
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_int_distribution<long> count(0, 50);
    for (int trial = 0; trial < 100; ++trial) {
        Vector s(3);
        for (int i = 0; i < 3; ++i) s(i) = coord(rng);
        if (s.norm() == 0.0) continue;
        std::vector<PostingRecord> ps;
        for (int i = 0; i < 4; ++i) {
            Vector e(3);
            for (int j = 0; j < 3; ++j) e(j) = coord(rng);
            ps.push_back(posting("p" + std::to_string(i), e, count(rng), count(rng), "s"));
        }
        const auto pop = normalized_popularity(ps, "s");
        double best = 0.0;
        for (const auto& p : ps)
            best = std::max(best, detail::clamped_cosine(s, p.embedding) * pop.at(p.id));
        const double threshold = 0.4;
        CHECK(context_heuristic(s, "s", ps, threshold) == (best >= threshold));
    }
}
