#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prf {

/// Stemming algorithm, selected by language code. Both are Porter-family
/// suffix strippers (the classic Porter algorithm for English, the snowball
/// algorithm for Spanish).
enum class stemmer_kind { none, porter_en, porter_es };

const char* to_string(stemmer_kind k);
stemmer_kind stemmer_from_string(std::string_view name);

/// Text analysis settings shared by indexing and query parsing.
///
/// Tokens are maximal runs of word characters: ASCII letters and digits plus
/// non-ASCII letters (everything at or above U+00C0 that is not a recognized
/// punctuation or symbol block). Case folding covers ASCII, Latin-1 and
/// Latin Extended-A, which is enough for the Spanish collections this engine
/// targets. Stopwords are compared after folding; filtering runs before
/// stemming, and a term whose stem lands on a stopword is dropped as well.
struct analyzer_config {
    bool lowercase = true;
    std::set<std::string> stopwords; // stored folded
    stemmer_kind stemmer = stemmer_kind::none;

    /// Stable digest of every setting that affects analysis output.
    uint64_t fingerprint() const;

    /// Loads one surface form per line; '#' lines and blanks ignored.
    /// Entries are folded according to `lowercase` before insertion.
    void load_stopwords(const std::filesystem::path& file);

    void add_stopword(std::string_view surface);
};

/// Analysis is a pure function of (text, config): tokenize, fold, filter
/// stopwords, stem. Empty input yields an empty sequence.
std::vector<std::string> analyze(std::string_view text, const analyzer_config& config);

/// Folds a single token the same way analyze() does.
std::string fold(std::string_view token, const analyzer_config& config);

} // namespace prf
