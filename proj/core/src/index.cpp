#include "prf/index.hpp"

#include <algorithm>
#include <map>

#include "prf/errors.hpp"
#include "prf/hash.hpp"
#include "prf/parallel.hpp"

namespace prf {

term_stats inverted_index::stats(std::string_view term) const {
    auto ord = term_ordinal(term);
    if (!ord) return {};
    return stats(*ord);
}

term_stats inverted_index::stats(uint32_t term_ordinal) const {
    return {postings_[term_ordinal].size(), cf_[term_ordinal]};
}

std::optional<uint32_t> inverted_index::term_ordinal(std::string_view term) const {
    auto it = term_lookup_.find(std::string(term));
    if (it == term_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<uint32_t> inverted_index::doc_ordinal(std::string_view doc_id) const {
    auto it = doc_lookup_.find(std::string(doc_id));
    if (it == doc_lookup_.end()) return std::nullopt;
    return it->second;
}

uint64_t inverted_index::pair_df(uint32_t term_a, uint32_t term_b) const {
    const auto& pa = postings_[term_a];
    const auto& pb = postings_[term_b];
    uint64_t n = 0;
    size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i].doc < pb[j].doc) {
            ++i;
        } else if (pb[j].doc < pa[i].doc) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

void inverted_index::finalize() {
    term_lookup_.reserve(terms_.size());
    for (uint32_t t = 0; t < terms_.size(); ++t) term_lookup_.emplace(terms_[t], t);
    doc_lookup_.reserve(docs_.size());
    for (uint32_t d = 0; d < docs_.size(); ++d) doc_lookup_.emplace(docs_[d].doc_id, d);

    cf_.assign(terms_.size(), 0);
    total_tokens_ = 0;
    for (uint32_t t = 0; t < terms_.size(); ++t)
        for (const posting& p : postings_[t]) cf_[t] += p.tf;
    for (const doc_record& d : docs_) total_tokens_ += d.length;

    std::string canon = "prf-index-v1\n";
    canon += "analyzer=" + hex64(analyzer_.fingerprint()) + "\n";
    uint64_t h = fnv1a64(canon);
    for (const doc_record& d : docs_) {
        h = fnv1a64(d.doc_id, h);
        h = fnv1a64(std::string_view("\x1e", 1), h);
    }
    for (uint32_t t = 0; t < terms_.size(); ++t) {
        h = fnv1a64(terms_[t], h);
        for (const posting& p : postings_[t]) {
            uint64_t packed = (static_cast<uint64_t>(p.doc) << 32) | p.tf;
            char buf[8];
            for (int k = 0; k < 8; ++k) buf[k] = static_cast<char>((packed >> (8 * k)) & 0xff);
            h = fnv1a64(std::string_view(buf, 8), h);
        }
    }
    fingerprint_ = h;
}

namespace {

struct analyzed_doc {
    std::string id;
    std::vector<std::pair<std::string, uint32_t>> freqs; // sorted by term
    uint64_t length = 0;
};

analyzed_doc analyze_doc(const raw_doc& doc, const analyzer_config& config) {
    analyzed_doc out;
    out.id = doc.id;
    std::map<std::string, uint32_t> freqs;
    auto terms = analyze(doc.text, config);
    out.length = terms.size();
    for (auto& t : terms) ++freqs[t];
    out.freqs.assign(freqs.begin(), freqs.end());
    return out;
}

} // namespace

inverted_index build_index(const std::vector<raw_doc>& corpus, const analyzer_config& config) {
    size_t next = 0;
    return build_index(
        [&]() -> std::optional<raw_doc> {
            if (next >= corpus.size()) return std::nullopt;
            return corpus[next++];
        },
        config);
}

inverted_index build_index(const corpus_reader& corpus, const analyzer_config& config) {
    std::vector<analyzed_doc> analyzed;
    std::vector<raw_doc> batch;
    constexpr size_t batch_size = 256;
    auto flush_batch = [&] {
        size_t base = analyzed.size();
        analyzed.resize(base + batch.size());
        parallel_for(batch.size(),
                     [&](size_t i) { analyzed[base + i] = analyze_doc(batch[i], config); });
        batch.clear();
    };
    while (auto doc = corpus()) {
        batch.push_back(std::move(*doc));
        if (batch.size() >= batch_size) flush_batch();
    }
    flush_batch();

    if (analyzed.empty()) throw error("empty corpus: nothing to index");

    // canonical commit order: documents by id
    std::sort(analyzed.begin(), analyzed.end(),
              [](const analyzed_doc& a, const analyzed_doc& b) { return a.id < b.id; });
    for (size_t i = 1; i < analyzed.size(); ++i)
        if (analyzed[i].id == analyzed[i - 1].id) throw duplicate_doc_error(analyzed[i].id);

    inverted_index ix;
    ix.analyzer_ = config;

    std::map<std::string, uint32_t> vocab; // term -> ordinal, assigned in sorted order
    for (const auto& d : analyzed)
        for (const auto& [term, tf] : d.freqs) vocab.emplace(term, 0);
    ix.terms_.reserve(vocab.size());
    for (auto& [term, ord] : vocab) {
        ord = static_cast<uint32_t>(ix.terms_.size());
        ix.terms_.push_back(term);
    }

    ix.postings_.resize(ix.terms_.size());
    ix.docs_.reserve(analyzed.size());
    for (uint32_t d = 0; d < analyzed.size(); ++d) {
        doc_record rec;
        rec.doc_id = analyzed[d].id;
        rec.length = analyzed[d].length;
        rec.term_freqs.reserve(analyzed[d].freqs.size());
        for (const auto& [term, tf] : analyzed[d].freqs) {
            uint32_t ord = vocab[term];
            rec.term_freqs.emplace_back(ord, tf);
            ix.postings_[ord].push_back({d, tf});
        }
        std::sort(rec.term_freqs.begin(), rec.term_freqs.end());
        ix.docs_.push_back(std::move(rec));
    }
    // postings were appended in ascending doc order already

    ix.finalize();
    return ix;
}

void ensure_analyzer(const inverted_index& ix, const analyzer_config& expected) {
    if (ix.analyzer_fingerprint() != expected.fingerprint())
        throw index_io_error(index_io_error::cause::fingerprint_mismatch,
                             "index analyzer fingerprint " + hex64(ix.analyzer_fingerprint()) +
                                 " does not match requested configuration " +
                                 hex64(expected.fingerprint()));
}

} // namespace prf
