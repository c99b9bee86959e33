#include "prf/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "prf/errors.hpp"

namespace prf {

uint32_t weighted_query::qtf_max() const {
    uint32_t m = 0;
    for (const auto& t : terms) m = std::max(m, t.qtf);
    return m;
}

double weighted_query::original_weight_sum() const {
    double s = 0.0;
    for (const auto& t : terms)
        if (t.qtf > 0) s += t.qtf;
    return s;
}

weighted_query parse_query(const std::string& topic_id, std::string_view title,
                           const analyzer_config& config) {
    weighted_query q;
    q.topic_id = topic_id;
    q.origin = query_origin::original;
    for (const auto& term : analyze(title, config)) {
        auto it = std::find_if(q.terms.begin(), q.terms.end(),
                               [&](const weighted_term& t) { return t.term == term; });
        if (it == q.terms.end()) {
            q.terms.push_back({term, 1.0, 1});
        } else {
            ++it->qtf;
            it->weight = it->qtf;
        }
    }
    if (q.terms.empty()) throw empty_query_error(topic_id);
    return q;
}

searcher::searcher(const inverted_index& ix) : ix_(ix) {
    idf_.resize(ix.vocab_size());
    for (uint32_t t = 0; t < ix.vocab_size(); ++t) {
        double df = static_cast<double>(ix.postings(t).size());
        idf_[t] = std::log2(1.0 + static_cast<double>(ix.n_docs()) / df);
    }
    norms_.resize(ix.n_docs());
    for (uint32_t d = 0; d < ix.n_docs(); ++d) {
        double sum = 0.0;
        for (const auto& [term, tf] : ix.doc(d).term_freqs) {
            double w = (1.0 + std::log2(static_cast<double>(tf))) * idf_[term];
            sum += w * w;
        }
        norms_[d] = std::sqrt(sum);
    }
}

ranking searcher::search(const weighted_query& query, size_t k) const {
    if (k < 1) throw invalid_argument("search: k must be >= 1");
    if (query.terms.empty()) throw invalid_argument("search: empty query");

    std::vector<double> scores(ix_.n_docs(), 0.0);
    std::vector<uint8_t> touched(ix_.n_docs(), 0);
    std::vector<uint32_t> matched;

    for (const weighted_term& qt : query.terms) {
        if (qt.weight <= 0.0) continue;
        auto ord = ix_.term_ordinal(qt.term);
        if (!ord) continue;
        double qw = qt.weight * idf_[*ord];
        for (const posting& p : ix_.postings(*ord)) {
            scores[p.doc] += qw * (1.0 + std::log2(static_cast<double>(p.tf)));
            if (!touched[p.doc]) {
                touched[p.doc] = 1;
                matched.push_back(p.doc);
            }
        }
    }

    // ascending ordinal == ascending doc_id, which is the tie-break order
    std::sort(matched.begin(), matched.end());
    for (uint32_t d : matched) scores[d] /= norms_[d];

    auto better = [&](uint32_t a, uint32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    };
    if (matched.size() > k) {
        std::partial_sort(matched.begin(), matched.begin() + static_cast<ptrdiff_t>(k),
                          matched.end(), better);
        matched.resize(k);
    } else {
        std::sort(matched.begin(), matched.end(), better);
    }

    ranking r;
    r.topic_id = query.topic_id;
    r.hits.reserve(matched.size());
    for (uint32_t d : matched) r.hits.push_back({ix_.doc(d).doc_id, scores[d]});
    return r;
}

} // namespace prf
