#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "prf/errors.hpp"
#include "prf/retrieval.hpp"

using namespace prf;

namespace {

analyzer_config plain() {
    analyzer_config c;
    c.stemmer = stemmer_kind::none;
    return c;
}

std::vector<raw_doc> random_corpus(std::mt19937& rng, int n_docs, int vocab, int max_len) {
    std::vector<raw_doc> corpus;
    for (int d = 0; d < n_docs; ++d) {
        std::string text;
        int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_len));
        for (int t = 0; t < len; ++t) {
            text += 't';
            text += std::to_string(rng() % static_cast<unsigned>(vocab));
            text += ' ';
        }
        corpus.push_back({"d" + std::to_string(100 + d), text});
    }
    return corpus;
}

} // namespace

TEST_CASE("parse_query counts term frequencies") {
    auto q = parse_query("41", "pesticide pesticide baby", plain());
    CHECK(q.topic_id == "41");
    CHECK(q.origin == query_origin::original);
    REQUIRE(q.terms.size() == 2);
    CHECK(q.terms[0] == weighted_term{"pesticide", 2.0, 2});
    CHECK(q.terms[1] == weighted_term{"baby", 1.0, 1});
    CHECK(q.qtf_max() == 2);
    CHECK(q.original_weight_sum() == doctest::Approx(3.0));
}

TEST_CASE("a fully stopworded title is an error naming the topic") {
    analyzer_config c = plain();
    c.add_stopword("the");
    c.add_stopword("of");
    CHECK_THROWS_WITH_AS(parse_query("77", "The of the", c), doctest::Contains("77"),
                         empty_query_error);
}

TEST_CASE("singleton query") {
    auto q = parse_query("55", "alps", plain());
    REQUIRE(q.terms.size() == 1);
    CHECK(q.terms[0] == weighted_term{"alps", 1.0, 1});
}

TEST_CASE("query terms absent from every document yield an empty ranking") {
    auto ix = build_index(std::vector<raw_doc>{{"d1", "a b"}, {"d2", "b c"}}, plain());
    searcher s(ix);
    auto r = s.search(parse_query("t", "zebra", plain()), 10);
    CHECK(r.hits.empty());
}

TEST_CASE("one-term document scores exactly one against its own term") {
    auto ix = build_index(std::vector<raw_doc>{{"d1", "a"}}, plain());
    searcher s(ix);
    auto r = s.search(parse_query("t", "a", plain()), 10);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].score == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-document fixture matches the independently evaluated score") {
    auto ix = build_index(std::vector<raw_doc>{{"d1", "a b"}, {"d2", "b c"}}, plain());
    searcher s(ix);
    auto r = s.search(parse_query("t", "a", plain()), 10);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].doc_id == "d1");
    // log2(3) / sqrt(log2(3)^2 + 1), evaluated independently
    CHECK(r.hits[0].score == doctest::Approx(0.8457366985068379).epsilon(1e-12));
}

TEST_CASE("empty query list is rejected") {
    auto ix = build_index(std::vector<raw_doc>{{"d1", "a"}}, plain());
    searcher s(ix);
    weighted_query q;
    q.topic_id = "t";
    CHECK_THROWS_AS(s.search(q, 10), invalid_argument);
    CHECK_THROWS_AS(s.search(parse_query("t", "a", plain()), 0), invalid_argument);
}

TEST_CASE("scaling all query weights never changes the ordering") {
    std::mt19937 rng(31);
    auto corpus = random_corpus(rng, 30, 15, 40);
    auto ix = build_index(corpus, plain());
    searcher s(ix);

    weighted_query q = parse_query("t", "t1 t2 t3 t2", plain());
    auto base = s.search(q, 100);
    for (double lambda : {0.25, 3.0, 1e6}) {
        weighted_query scaled = q;
        for (auto& t : scaled.terms) t.weight *= lambda;
        auto r = s.search(scaled, 100);
        REQUIRE(r.hits.size() == base.hits.size());
        for (size_t i = 0; i < r.hits.size(); ++i) CHECK(r.hits[i].doc_id == base.hits[i].doc_id);
    }
}

TEST_CASE("ranking order matches the brute-force scorer on random collections") {
    std::mt19937 rng(97);
    for (int round = 0; round < 25; ++round) {
        auto corpus = random_corpus(rng, 3 + static_cast<int>(rng() % 20), 12, 30);
        auto ix = build_index(corpus, plain());
        searcher s(ix);

        std::string title = "t" + std::to_string(rng() % 12);
        if (rng() % 2) title += " t" + std::to_string(rng() % 12);
        weighted_query q;
        try {
            q = parse_query("t", title, plain());
        } catch (const empty_query_error&) {
            continue;
        }
        auto mine = s.search(q, corpus.size());
        auto want = testing::ref_search(corpus, plain(), q);
        REQUIRE(mine.hits.size() == want.size());
        for (size_t i = 0; i < want.size(); ++i) {
            CHECK(mine.hits[i].doc_id == want[i].first);
            CHECK(mine.hits[i].score == doctest::Approx(want[i].second).epsilon(1e-12));
        }
    }
}

TEST_CASE("single-term queries order documents by the closed-form weight") {
    std::mt19937 rng(13);
    auto corpus = random_corpus(rng, 25, 8, 25);
    auto ix = build_index(corpus, plain());
    searcher s(ix);
    auto q = parse_query("t", "t3", plain());
    auto r = s.search(q, corpus.size());
    auto ord = ix.term_ordinal("t3");
    REQUIRE(ord.has_value());
    for (const auto& h : r.hits) {
        auto d = *ix.doc_ordinal(h.doc_id);
        uint32_t tf = 0;
        for (auto [term, f] : ix.doc(d).term_freqs)
            if (term == *ord) tf = f;
        REQUIRE(tf > 0);
        double expect = (1.0 + std::log2(static_cast<double>(tf))) * s.idf(*ord) / s.norm(d);
        CHECK(h.score == doctest::Approx(expect).epsilon(1e-12));
    }
    for (size_t i = 1; i < r.hits.size(); ++i) {
        bool ordered = r.hits[i - 1].score > r.hits[i].score ||
                       (r.hits[i - 1].score == r.hits[i].score &&
                        r.hits[i - 1].doc_id < r.hits[i].doc_id);
        CHECK(ordered);
    }
}

TEST_CASE("search results are deterministic and k-truncated") {
    std::mt19937 rng(53);
    auto corpus = random_corpus(rng, 40, 6, 30);
    auto ix = build_index(corpus, plain());
    searcher s(ix);
    auto q = parse_query("t", "t0 t1", plain());
    auto full = s.search(q, 1000);
    auto top3 = s.search(q, 3);
    REQUIRE(top3.hits.size() == std::min<size_t>(3, full.hits.size()));
    for (size_t i = 0; i < top3.hits.size(); ++i) {
        CHECK(top3.hits[i].doc_id == full.hits[i].doc_id);
        CHECK(top3.hits[i].score == full.hits[i].score);
    }
    auto again = s.search(q, 1000);
    REQUIRE(again.hits.size() == full.hits.size());
    for (size_t i = 0; i < full.hits.size(); ++i) {
        CHECK(again.hits[i].doc_id == full.hits[i].doc_id);
        CHECK(again.hits[i].score == full.hits[i].score);
    }
}

TEST_CASE("zero-weight terms neither score nor pull documents in") {
    auto ix = build_index(std::vector<raw_doc>{{"d1", "a"}, {"d2", "b"}}, plain());
    searcher s(ix);
    weighted_query q;
    q.topic_id = "t";
    q.terms = {{"a", 1.0, 1}, {"b", 0.0, 0}};
    auto r = s.search(q, 10);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].doc_id == "d1");
}
