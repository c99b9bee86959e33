#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace prf::testing {

ref_measures ref_evaluate(const run& r, const qrels& q, const std::vector<size_t>& p_points) {
    ref_measures out;
    double prod = 1.0;
    size_t n = 0;
    for (const auto& [topic, relevant] : q.judgments) {
        if (relevant.empty()) continue; // zero-relevant topics are skipped
        std::vector<std::string> ids;
        if (auto it = r.results.find(topic); it != r.results.end())
            for (const auto& [doc, score] : it->second) ids.push_back(doc);

        double ap = 0.0;
        size_t rel_seen = 0;
        for (size_t rank = 1; rank <= ids.size(); ++rank) {
            if (relevant.count(ids[rank - 1])) {
                ++rel_seen;
                ap += static_cast<double>(rel_seen) / static_cast<double>(rank);
            }
        }
        ap /= static_cast<double>(relevant.size());

        size_t big_r = relevant.size();
        size_t in_top_r = 0;
        for (size_t i = 0; i < std::min(big_r, ids.size()); ++i)
            if (relevant.count(ids[i])) ++in_top_r;
        double rp = static_cast<double>(in_top_r) / static_cast<double>(big_r);

        for (size_t x : p_points) {
            size_t found = 0;
            for (size_t i = 0; i < std::min(x, ids.size()); ++i)
                if (relevant.count(ids[i])) ++found;
            out.p_at[x] += static_cast<double>(found) / static_cast<double>(x);
        }

        out.per_topic_ap[topic] = ap;
        out.map += ap;
        out.r_prec += rp;
        prod *= std::max(ap, 1e-5);
        ++n;
    }
    out.map /= static_cast<double>(n);
    out.r_prec /= static_cast<double>(n);
    for (auto& [x, v] : out.p_at) v /= static_cast<double>(n);
    out.gmap = std::pow(prod, 1.0 / static_cast<double>(n));
    return out;
}

namespace {

struct ref_doc {
    std::string id;
    std::vector<std::string> terms;
    std::map<std::string, uint32_t> tf;
    std::set<std::string> distinct;
};

std::vector<ref_doc> analyze_corpus(const std::vector<raw_doc>& corpus,
                                    const analyzer_config& config) {
    std::vector<ref_doc> docs;
    for (const auto& d : corpus) {
        ref_doc rd;
        rd.id = d.id;
        rd.terms = analyze(d.text, config);
        for (const auto& t : rd.terms) {
            ++rd.tf[t];
            rd.distinct.insert(t);
        }
        docs.push_back(std::move(rd));
    }
    return docs;
}

std::map<std::string, uint64_t> count_df(const std::vector<ref_doc>& docs) {
    std::map<std::string, uint64_t> df;
    for (const auto& d : docs)
        for (const auto& t : d.distinct) ++df[t];
    return df;
}

} // namespace

std::vector<std::pair<std::string, double>> ref_search(const std::vector<raw_doc>& corpus,
                                                       const analyzer_config& config,
                                                       const weighted_query& query) {
    auto docs = analyze_corpus(corpus, config);
    auto df = count_df(docs);
    double n_docs = static_cast<double>(docs.size());
    auto idf = [&](const std::string& t) {
        return std::log2(1.0 + n_docs / static_cast<double>(df.at(t)));
    };

    std::vector<std::pair<std::string, double>> hits;
    for (const auto& d : docs) {
        double norm = 0.0;
        for (const auto& [t, tf] : d.tf) {
            double w = (1.0 + std::log2(static_cast<double>(tf))) * idf(t);
            norm += w * w;
        }
        norm = std::sqrt(norm);

        double score = 0.0;
        bool matched = false;
        for (const auto& qt : query.terms) {
            if (qt.weight <= 0.0) continue;
            auto it = d.tf.find(qt.term);
            if (it == d.tf.end()) continue;
            matched = true;
            score += qt.weight * idf(qt.term) * (1.0 + std::log2(static_cast<double>(it->second)));
        }
        if (matched) hits.emplace_back(d.id, score / norm);
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return hits;
}

std::vector<candidate> ref_extract(const std::vector<raw_doc>& corpus,
                                   const analyzer_config& config,
                                   const std::vector<std::string>& feedback_ids,
                                   const weighted_query& query, expansion_method base_method,
                                   cooc_coefficient coefficient, cooc_scope scope, size_t limit) {
    auto docs = analyze_corpus(corpus, config);
    auto df = count_df(docs);
    uint64_t collection_tokens = 0;
    std::map<std::string, uint64_t> cf;
    for (const auto& d : docs) {
        collection_tokens += d.terms.size();
        for (const auto& [t, tf] : d.tf) cf[t] += tf;
    }

    std::vector<const ref_doc*> feedback;
    for (const auto& id : feedback_ids)
        for (const auto& d : docs)
            if (d.id == id) feedback.push_back(&d);

    uint64_t top_tokens = 0;
    std::map<std::string, uint64_t> top_tf, top_dc;
    for (const ref_doc* d : feedback) {
        top_tokens += d->terms.size();
        for (const auto& [t, tf] : d->tf) {
            top_tf[t] += tf;
            top_dc[t] += 1;
        }
    }

    auto pair_count_top = [&](const std::string& a, const std::string& b) {
        uint64_t n = 0;
        for (const ref_doc* d : feedback)
            if (d->distinct.count(a) && d->distinct.count(b)) ++n;
        return n;
    };
    auto pair_count_collection = [&](const std::string& a, const std::string& b) {
        uint64_t n = 0;
        for (const auto& d : docs)
            if (d.distinct.count(a) && d.distinct.count(b)) ++n;
        return n;
    };

    std::set<std::string> query_terms;
    for (const auto& qt : query.terms) query_terms.insert(qt.term);

    std::vector<candidate> scored;
    for (const auto& [term, dc] : top_dc) {
        if (query_terms.count(term)) continue;
        double score = 0.0;
        switch (base_method) {
            case expansion_method::cooccurrence: {
                for (const auto& qt : query.terms) {
                    uint64_t ci, ce, cie;
                    if (scope == cooc_scope::top_set) {
                        auto it = top_dc.find(qt.term);
                        if (it == top_dc.end()) continue;
                        ci = it->second;
                        ce = dc;
                        cie = pair_count_top(qt.term, term);
                    } else {
                        auto it = df.find(qt.term);
                        if (it == df.end()) continue;
                        ci = it->second;
                        ce = df.at(term);
                        cie = pair_count_collection(qt.term, term);
                    }
                    score += qt.weight * cc_coefficient(coefficient, ci, ce, cie);
                }
                if (!(score > 0.0)) continue;
                break;
            }
            case expansion_method::kld: {
                double p_r = static_cast<double>(top_tf.at(term)) / static_cast<double>(top_tokens);
                double p_c = static_cast<double>(cf.at(term)) / static_cast<double>(collection_tokens);
                score = p_r * std::log2(p_r / p_c);
                break;
            }
            case expansion_method::bo1: {
                double p_n = static_cast<double>(cf.at(term)) / static_cast<double>(docs.size());
                score = static_cast<double>(top_tf.at(term)) * std::log2((1.0 + p_n) / p_n) +
                        std::log2(1.0 + p_n);
                break;
            }
            default:
                break;
        }
        scored.push_back({term, score});
    }
    std::sort(scored.begin(), scored.end(), [](const candidate& a, const candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
    if (scored.size() > limit) scored.resize(limit);
    return scored;
}

} // namespace prf::testing
