#include <doctest.h>

#include <random>

#include "prf/analyzer.hpp"
#include "prf/errors.hpp"
#include "testutil.hpp"

using namespace prf;

namespace {

analyzer_config plain() {
    analyzer_config c;
    c.stemmer = stemmer_kind::none;
    return c;
}

} // namespace

TEST_CASE("empty input analyzes to an empty sequence") {
    CHECK(analyze("", plain()).empty());
    analyzer_config c = plain();
    c.stemmer = stemmer_kind::porter_es;
    c.add_stopword("de");
    CHECK(analyze("", c).empty());
    CHECK(analyze("  \t\n ...", c).empty());
}

TEST_CASE("stopword removal and stemming compose in order") {
    analyzer_config c;
    c.stemmer = stemmer_kind::porter_en;
    c.add_stopword("the");
    auto terms = analyze("The CARS car", c);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0] == "car");
    CHECK(terms[1] == "car");
}

TEST_CASE("identity analysis keeps order and duplicates") {
    auto terms = analyze("x1 x1 y", plain());
    REQUIRE(terms.size() == 3);
    CHECK(terms[0] == "x1");
    CHECK(terms[1] == "x1");
    CHECK(terms[2] == "y");
}

TEST_CASE("tokens are maximal runs of word characters") {
    auto terms = analyze("foo-bar, baz.qux 3rd", plain());
    CHECK(terms == std::vector<std::string>{"foo", "bar", "baz", "qux", "3rd"});
}

TEST_CASE("case folding covers accented latin") {
    auto terms = analyze("Árbol NIÑO Über cañón", plain());
    CHECK(terms == std::vector<std::string>{"árbol", "niño", "über", "cañón"});
}

TEST_CASE("spanish punctuation separates tokens") {
    auto terms = analyze("¡Hola! ¿qué tal? «bien»", plain());
    CHECK(terms == std::vector<std::string>{"hola", "qué", "tal", "bien"});
}

TEST_CASE("stopwords compare after folding") {
    analyzer_config c = plain();
    c.add_stopword("THE"); // stored folded
    CHECK(analyze("the The THE then", c) == std::vector<std::string>{"then"});
}

TEST_CASE("a stem landing on a stopword is dropped") {
    analyzer_config c;
    c.stemmer = stemmer_kind::porter_en;
    c.add_stopword("and");
    // "anding" stems to "and", which the stopword list forbids
    CHECK(analyze("anding cars", c) == std::vector<std::string>{"car"});
}

TEST_CASE("no lowercase folding when disabled") {
    analyzer_config c = plain();
    c.lowercase = false;
    CHECK(analyze("Foo foo", c) == std::vector<std::string>{"Foo", "foo"});
}

TEST_CASE("stopword files ignore comments and blanks") {
    testing::temp_dir tmp;
    testing::write_file(tmp.file("stop.txt"), "# common words\nthe\n\n  of  \n#x\nAND\n");
    analyzer_config c = plain();
    c.load_stopwords(tmp.file("stop.txt"));
    CHECK(c.stopwords == std::set<std::string>{"the", "of", "and"});
    CHECK_THROWS_AS(c.load_stopwords(tmp.file("missing.txt")), error);
}

TEST_CASE("analysis is deterministic and pure") {
    analyzer_config c;
    c.stemmer = stemmer_kind::porter_es;
    c.add_stopword("de");
    c.add_stopword("la");
    std::string text = "Caída de las exportaciones ¡¿de coches?! en Japón, 1994 – según «EFE»";
    auto a = analyze(text, c);
    auto b = analyze(text, c);
    CHECK(a == b);
    REQUIRE(!a.empty());
    for (const auto& t : a) {
        CHECK(!t.empty());
        CHECK(t.find(' ') == std::string::npos);
        CHECK(!c.stopwords.contains(t));
    }
}

TEST_CASE("no output term is ever a stopword") {
    analyzer_config c;
    c.stemmer = stemmer_kind::porter_en;
    for (const char* w : {"a", "and", "the", "run", "runs"}) c.add_stopword(w);
    std::mt19937 rng(20240901);
    const std::string alphabet = "abcdefghij ";
    for (int round = 0; round < 200; ++round) {
        std::string text;
        for (int i = 0; i < 60; ++i)
            text += alphabet[rng() % alphabet.size()];
        for (const auto& t : analyze(text, c)) CHECK(!c.stopwords.contains(t));
    }
}

TEST_CASE("fingerprint tracks every analysis setting") {
    analyzer_config a = plain();
    analyzer_config b = plain();
    CHECK(a.fingerprint() == b.fingerprint());
    b.stemmer = stemmer_kind::porter_en;
    CHECK(a.fingerprint() != b.fingerprint());
    b = plain();
    b.add_stopword("the");
    CHECK(a.fingerprint() != b.fingerprint());
    b = plain();
    b.lowercase = false;
    CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("malformed utf-8 degrades to separators") {
    std::string bad = "abc\xff\xfe xyz";
    CHECK(analyze(bad, plain()) == std::vector<std::string>{"abc", "xyz"});
}
