#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prf/analyzer.hpp"

namespace prf {

/// One posting: document ordinal (index into the committed doc table, which
/// is sorted by doc_id) and the term frequency in that document.
struct posting {
    uint32_t doc;
    uint32_t tf;
    friend bool operator==(const posting&, const posting&) = default;
};

/// Forward record for one document. term_freqs is sorted by term ordinal.
struct doc_record {
    std::string doc_id;
    std::vector<std::pair<uint32_t, uint32_t>> term_freqs; // (term ordinal, tf)
    uint64_t length = 0;                                   // sum of tf
};

struct term_stats {
    uint64_t df = 0; // documents containing the term
    uint64_t cf = 0; // total occurrences in the collection (symbol F)
    friend bool operator==(const term_stats&, const term_stats&) = default;
};

struct raw_doc {
    std::string id;
    std::string text;
};

/// Pull-based corpus reader; returns nullopt at end of stream.
using corpus_reader = std::function<std::optional<raw_doc>()>;

/// Immutable inverted index with the collection statistics the expansion
/// formulas need. Committed content is canonical: documents sorted by id,
/// vocabulary sorted lexicographically, postings sorted by doc ordinal, so
/// the same corpus produces the same index in any input order.
class inverted_index {
public:
    uint64_t n_docs() const { return docs_.size(); }
    uint64_t total_tokens() const { return total_tokens_; }
    uint64_t vocab_size() const { return terms_.size(); }

    const analyzer_config& analyzer() const { return analyzer_; }
    uint64_t analyzer_fingerprint() const { return analyzer_.fingerprint(); }

    /// Content digest over stats, doc table and vocabulary; stable across
    /// save/load and input permutations.
    uint64_t fingerprint() const { return fingerprint_; }

    /// (0,0) for terms not in the vocabulary.
    term_stats stats(std::string_view term) const;
    term_stats stats(uint32_t term_ordinal) const;

    std::optional<uint32_t> term_ordinal(std::string_view term) const;
    const std::string& term(uint32_t ordinal) const { return terms_[ordinal]; }
    const std::vector<posting>& postings(uint32_t term_ordinal) const {
        return postings_[term_ordinal];
    }

    std::optional<uint32_t> doc_ordinal(std::string_view doc_id) const;
    const doc_record& doc(uint32_t ordinal) const { return docs_[ordinal]; }
    const std::vector<doc_record>& docs() const { return docs_; }
    const std::vector<std::string>& vocabulary() const { return terms_; }

    /// Documents containing both terms, counted over the whole collection
    /// by intersecting the two posting lists.
    uint64_t pair_df(uint32_t term_a, uint32_t term_b) const;

private:
    friend inverted_index build_index(const corpus_reader&, const analyzer_config&);
    friend inverted_index load_index(const std::filesystem::path&);

    void finalize();

    std::vector<doc_record> docs_;
    std::vector<std::string> terms_;
    std::vector<std::vector<posting>> postings_;
    std::vector<uint64_t> cf_;
    std::unordered_map<std::string, uint32_t> term_lookup_;
    std::unordered_map<std::string, uint32_t> doc_lookup_;
    uint64_t total_tokens_ = 0;
    uint64_t fingerprint_ = 0;
    analyzer_config analyzer_;
};

/// Analyzes a corpus and commits it. Duplicate doc ids and empty corpora are
/// rejected. Analysis of documents runs in parallel; the commit step sorts
/// everything into canonical order so output is independent of both input
/// order and worker count.
inverted_index build_index(const corpus_reader& corpus, const analyzer_config& config);
inverted_index build_index(const std::vector<raw_doc>& corpus, const analyzer_config& config);

/// Single-file binary format with magic, version, analyzer block and a
/// trailing CRC-32. load_index reports not-found, bad magic, version
/// mismatch, checksum mismatch and truncation distinctly (index_io_error).
void save_index(const inverted_index& ix, const std::filesystem::path& path);
inverted_index load_index(const std::filesystem::path& path);

/// Throws index_io_error{fingerprint_mismatch} when an explicitly requested
/// analyzer configuration differs from the one the index was built with.
void ensure_analyzer(const inverted_index& ix, const analyzer_config& expected);

/// Corpus ingestion: JSON-lines ({"id":..., "text":...} per line) or a
/// directory of .txt files whose filename stem is the doc id.
corpus_reader jsonl_corpus(const std::filesystem::path& file);
corpus_reader dir_corpus(const std::filesystem::path& dir);

} // namespace prf
