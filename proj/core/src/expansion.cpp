#include "prf/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_set>

#include "prf/errors.hpp"

namespace prf {

const char* to_string(cooc_coefficient c) {
    switch (c) {
        case cooc_coefficient::tanimoto: return "tanimoto";
        case cooc_coefficient::dice: return "dice";
        case cooc_coefficient::cosine: return "cosine";
    }
    return "tanimoto";
}

const char* to_string(expansion_method m) {
    switch (m) {
        case expansion_method::cooccurrence: return "coo";
        case expansion_method::kld: return "kld";
        case expansion_method::bo1: return "bo1";
        case expansion_method::bo1_cooccurrence: return "boco";
        case expansion_method::kld_cooccurrence: return "kldco";
    }
    return "coo";
}

const char* to_string(reweight_scheme r) {
    switch (r) {
        case reweight_scheme::rocchio: return "rocchio";
        case reweight_scheme::sumcc: return "sumcc";
        case reweight_scheme::kld: return "kld";
        case reweight_scheme::bonorm: return "bonorm";
    }
    return "rocchio";
}

const char* to_string(cooc_scope s) {
    return s == cooc_scope::top_set ? "top_set" : "collection";
}

cooc_coefficient coefficient_from_string(std::string_view name) {
    if (name == "tanimoto") return cooc_coefficient::tanimoto;
    if (name == "dice") return cooc_coefficient::dice;
    if (name == "cosine") return cooc_coefficient::cosine;
    throw invalid_argument("unknown coefficient: " + std::string(name));
}

expansion_method method_from_string(std::string_view name) {
    if (name == "coo" || name == "cooccurrence") return expansion_method::cooccurrence;
    if (name == "kld") return expansion_method::kld;
    if (name == "bo1" || name == "bo") return expansion_method::bo1;
    if (name == "boco") return expansion_method::bo1_cooccurrence;
    if (name == "kldco") return expansion_method::kld_cooccurrence;
    throw invalid_argument("unknown expansion method: " + std::string(name));
}

reweight_scheme reweight_from_string(std::string_view name) {
    if (name == "rocchio") return reweight_scheme::rocchio;
    if (name == "sumcc") return reweight_scheme::sumcc;
    if (name == "kld") return reweight_scheme::kld;
    if (name == "bonorm") return reweight_scheme::bonorm;
    throw invalid_argument("unknown reweighting scheme: " + std::string(name));
}

cooc_scope scope_from_string(std::string_view name) {
    if (name == "top_set" || name == "topset" || name == "top-set") return cooc_scope::top_set;
    if (name == "collection") return cooc_scope::collection;
    throw invalid_argument("unknown cooccurrence scope: " + std::string(name));
}

size_t default_n_terms(expansion_method m) {
    switch (m) {
        case expansion_method::cooccurrence: return 25;
        case expansion_method::kld:
        case expansion_method::bo1: return 40;
        case expansion_method::bo1_cooccurrence:
        case expansion_method::kld_cooccurrence: return 75;
    }
    return 25;
}

reweight_scheme default_reweight(expansion_method m) {
    switch (m) {
        case expansion_method::cooccurrence: return reweight_scheme::rocchio;
        case expansion_method::kld: return reweight_scheme::kld;
        case expansion_method::bo1: return reweight_scheme::bonorm;
        case expansion_method::bo1_cooccurrence:
        case expansion_method::kld_cooccurrence: return reweight_scheme::rocchio;
    }
    return reweight_scheme::rocchio;
}

size_t expansion_config::effective_n_terms() const {
    return n_terms > 0 ? n_terms : default_n_terms(method);
}

size_t expansion_config::effective_base_list_size() const {
    return base_list_size > 0 ? base_list_size : 3 * effective_n_terms();
}

void expansion_config::validate() const {
    if (beta < 0.0) throw invalid_argument("expansion: beta must be >= 0");
    if (r_docs < 1) throw invalid_argument("expansion: r_docs must be >= 1");
    if (effective_n_terms() < 1) throw invalid_argument("expansion: n_terms must be >= 1");
    bool combined = method == expansion_method::bo1_cooccurrence ||
                    method == expansion_method::kld_cooccurrence;
    if (combined && effective_base_list_size() < effective_n_terms())
        throw invalid_argument("expansion: base_list_size must be >= n_terms");
    switch (reweight) {
        case reweight_scheme::rocchio:
            break;
        case reweight_scheme::sumcc:
            if (method != expansion_method::cooccurrence)
                throw invalid_argument("sumcc reweighting requires the cooccurrence method");
            break;
        case reweight_scheme::kld:
            if (method != expansion_method::kld)
                throw invalid_argument("kld reweighting requires the kld method");
            break;
        case reweight_scheme::bonorm:
            if (method != expansion_method::bo1)
                throw invalid_argument("bonorm reweighting requires the bo1 method");
            break;
    }
}

const top_set::term_entry* top_set::find(uint32_t term_ordinal) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term_ordinal,
                               [](const term_entry& e, uint32_t t) { return e.term < t; });
    if (it == terms.end() || it->term != term_ordinal) return nullptr;
    return &*it;
}

uint32_t top_set::doc_count(uint32_t term_ordinal) const {
    const term_entry* e = find(term_ordinal);
    return e ? e->doc_count : 0;
}

uint64_t top_set::tf_sum(uint32_t term_ordinal) const {
    const term_entry* e = find(term_ordinal);
    return e ? e->tf_sum : 0;
}

uint32_t top_set::pair_doc_count(uint32_t term_a, uint32_t term_b) const {
    auto contains = [&](uint32_t doc, uint32_t term) {
        const auto& tf = ix->doc(doc).term_freqs;
        auto it = std::lower_bound(tf.begin(), tf.end(), term,
                                   [](const auto& p, uint32_t t) { return p.first < t; });
        return it != tf.end() && it->first == term;
    };
    uint32_t n = 0;
    for (uint32_t d : doc_ordinals)
        if (contains(d, term_a) && contains(d, term_b)) ++n;
    return n;
}

top_set build_topset(const inverted_index& ix, const ranking& r, size_t r_docs) {
    if (r.hits.empty()) throw invalid_argument("build_topset: empty ranking, no feedback possible");
    if (r_docs < 1) throw invalid_argument("build_topset: r_docs must be >= 1");

    top_set top;
    top.topic_id = r.topic_id;
    top.ix = &ix;
    size_t use = std::min(r_docs, r.hits.size());
    top.r_docs = use;
    top.doc_ordinals.reserve(use);

    std::map<uint32_t, top_set::term_entry> acc;
    for (size_t i = 0; i < use; ++i) {
        auto ord = ix.doc_ordinal(r.hits[i].doc_id);
        if (!ord) throw invalid_argument("build_topset: unknown document " + r.hits[i].doc_id);
        top.doc_ordinals.push_back(*ord);
        const doc_record& d = ix.doc(*ord);
        top.total_tokens += d.length;
        for (const auto& [term, tf] : d.term_freqs) {
            auto& e = acc.try_emplace(term, top_set::term_entry{term, 0, 0}).first->second;
            e.doc_count += 1;
            e.tf_sum += tf;
        }
    }
    top.terms.reserve(acc.size());
    for (const auto& [ord, e] : acc) top.terms.push_back(e);
    return top;
}

double cc_coefficient(cooc_coefficient kind, uint64_t c_i, uint64_t c_j, uint64_t c_ij) {
    if (c_i < 1 || c_j < 1)
        throw invalid_argument("cc_coefficient: c_i and c_j must be >= 1");
    if (c_ij > std::min(c_i, c_j))
        throw invalid_argument("cc_coefficient: c_ij cannot exceed min(c_i, c_j)");
    double ci = static_cast<double>(c_i);
    double cj = static_cast<double>(c_j);
    double cij = static_cast<double>(c_ij);
    switch (kind) {
        case cooc_coefficient::tanimoto: return cij / (ci + cj - cij);
        case cooc_coefficient::dice: return 2.0 * cij / (ci + cj);
        case cooc_coefficient::cosine: return cij / std::sqrt(ci * cj);
    }
    return 0.0;
}

namespace {

// counts for one query term against one candidate, under either scope
struct pair_counts {
    uint64_t c_i, c_e, c_ie;
    bool valid;
};

pair_counts counts_for(const top_set& top, uint32_t query_term, uint32_t cand_term,
                       cooc_scope scope) {
    if (scope == cooc_scope::top_set) {
        uint32_t ci = top.doc_count(query_term);
        if (ci == 0) return {0, 0, 0, false};
        uint32_t ce = top.doc_count(cand_term);
        if (ce == 0) return {0, 0, 0, false};
        return {ci, ce, top.pair_doc_count(query_term, cand_term), true};
    }
    uint64_t ci = top.ix->stats(query_term).df;
    uint64_t ce = top.ix->stats(cand_term).df;
    if (ci == 0 || ce == 0) return {0, 0, 0, false};
    return {ci, ce, top.ix->pair_df(query_term, cand_term), true};
}

double rel_score_ordinal(const weighted_query& query, uint32_t cand_term, const top_set& top,
                         cooc_coefficient kind, cooc_scope scope) {
    double rel = 0.0;
    for (const weighted_term& qt : query.terms) {
        auto ord = top.ix->term_ordinal(qt.term);
        if (!ord) continue;
        pair_counts pc = counts_for(top, *ord, cand_term, scope);
        if (!pc.valid) continue;
        rel += qt.weight * cc_coefficient(kind, pc.c_i, pc.c_e, pc.c_ie);
    }
    return rel;
}

} // namespace

double rel_score(const weighted_query& query, std::string_view candidate, const top_set& top,
                 cooc_coefficient kind, cooc_scope scope) {
    if (query.terms.empty()) throw invalid_argument("rel_score: empty query");
    auto ord = top.ix->term_ordinal(candidate);
    if (!ord || !top.find(*ord))
        throw invalid_argument("rel_score: candidate does not occur in the top set");
    return rel_score_ordinal(query, *ord, top, kind, scope);
}

double kld_score(double p_r, double p_c) {
    if (!(p_r > 0.0) || p_r > 1.0 || !(p_c > 0.0) || p_c > 1.0)
        throw invalid_argument("kld_score: probabilities must lie in (0, 1]");
    return p_r * std::log2(p_r / p_c);
}

double bo1_score(double tf_x, double f, double n_docs) {
    if (f < 1.0 || n_docs < 1.0 || tf_x < 0.0)
        throw invalid_argument("bo1_score: requires f >= 1, n_docs >= 1, tf_x >= 0");
    double p_n = f / n_docs;
    return tf_x * std::log2((1.0 + p_n) / p_n) + std::log2(1.0 + p_n);
}

candidate_list extract_candidates(const weighted_query& query, const top_set& top,
                                  const expansion_config& config, size_t limit) {
    if (limit < 1) throw invalid_argument("extract_candidates: limit must be >= 1");
    expansion_method base = config.method;
    if (base == expansion_method::bo1_cooccurrence) base = expansion_method::bo1;
    if (base == expansion_method::kld_cooccurrence) base = expansion_method::kld;

    candidate_list cl;
    cl.topic_id = query.topic_id;
    cl.method = base;
    cl.coefficient = config.coefficient;
    cl.r_docs = top.r_docs;
    cl.limit = limit;

    std::unordered_set<uint32_t> query_ords;
    for (const weighted_term& qt : query.terms)
        if (auto ord = top.ix->term_ordinal(qt.term)) query_ords.insert(*ord);

    const inverted_index& ix = *top.ix;
    std::vector<std::pair<uint32_t, double>> scored; // (term ordinal, score)
    for (const auto& e : top.terms) {
        if (query_ords.contains(e.term)) continue;
        double score = 0.0;
        switch (base) {
            case expansion_method::cooccurrence:
                score = rel_score_ordinal(query, e.term, top, config.coefficient, config.scope);
                if (!(score > 0.0)) continue; // must actually cooccur with the query
                break;
            case expansion_method::kld: {
                double p_r = static_cast<double>(e.tf_sum) / static_cast<double>(top.total_tokens);
                double p_c = static_cast<double>(ix.stats(e.term).cf) /
                             static_cast<double>(ix.total_tokens());
                score = kld_score(p_r, p_c);
                break;
            }
            case expansion_method::bo1:
                score = bo1_score(static_cast<double>(e.tf_sum),
                                  static_cast<double>(ix.stats(e.term).cf),
                                  static_cast<double>(ix.n_docs()));
                break;
            default:
                break;
        }
        scored.emplace_back(e.term, score);
    }

    // term ordinals are assigned in lexicographic order, so ordinal ascending
    // is exactly the tie-break the contract asks for
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > limit) scored.resize(limit);

    cl.entries.reserve(scored.size());
    for (const auto& [ord, score] : scored) cl.entries.push_back({ix.term(ord), score});
    return cl;
}

candidate_list combine_candidates(const candidate_list& list_a, const candidate_list& list_b,
                                  size_t n_terms) {
    if (list_a.topic_id != list_b.topic_id)
        throw invalid_argument("combine_candidates: lists belong to different topics");
    if (list_a.method != expansion_method::cooccurrence)
        throw invalid_argument("combine_candidates: list_a must be a cooccurrence list");
    if (list_b.method != expansion_method::kld && list_b.method != expansion_method::bo1)
        throw invalid_argument("combine_candidates: list_b must be a kld or bo1 list");
    if (n_terms < 1) throw invalid_argument("combine_candidates: n_terms must be >= 1");
    if (list_a.limit < n_terms || list_b.limit < n_terms)
        throw invalid_argument("combine_candidates: base lists were built with fewer than n_terms");

    candidate_list out;
    out.topic_id = list_a.topic_id;
    out.method = list_b.method == expansion_method::bo1 ? expansion_method::bo1_cooccurrence
                                                        : expansion_method::kld_cooccurrence;
    out.coefficient = list_a.coefficient;
    out.r_docs = list_a.r_docs;
    out.limit = n_terms;

    std::unordered_set<std::string_view> in_b;
    for (const candidate& c : list_b.entries) in_b.insert(c.term);
    for (const candidate& c : list_a.entries) {
        if (!in_b.contains(c.term)) continue;
        out.entries.push_back(c);
        if (out.entries.size() == n_terms) break;
    }
    return out;
}

namespace {

weighted_query tagged_copy(const weighted_query& query, const candidate_list& candidates) {
    weighted_query out = query;
    out.origin = query_origin::expanded;
    out.method_tag = to_string(candidates.method);
    return out;
}

} // namespace

weighted_query reweight_rocchio(const weighted_query& query, const candidate_list& candidates,
                                double beta) {
    if (beta < 0.0) throw invalid_argument("reweight_rocchio: beta must be >= 0");
    if (query.terms.empty()) throw invalid_argument("reweight_rocchio: empty query");
    if (candidates.entries.empty()) return tagged_copy(query, candidates);

    double w_max = candidates.entries.front().score;
    for (const candidate& c : candidates.entries) w_max = std::max(w_max, c.score);
    if (!(w_max > 0.0))
        throw invalid_argument("reweight_rocchio: all candidate scores are nonpositive");

    double qtf_max = query.qtf_max();
    if (!(qtf_max > 0.0))
        throw invalid_argument("reweight_rocchio: query carries no original term frequencies");
    std::map<std::string_view, double> cand_score;
    for (const candidate& c : candidates.entries) cand_score.emplace(c.term, c.score);

    weighted_query out;
    out.topic_id = query.topic_id;
    out.origin = query_origin::expanded;
    out.method_tag = to_string(candidates.method);
    out.terms.reserve(query.terms.size() + candidates.entries.size());
    for (const weighted_term& qt : query.terms) {
        auto it = cand_score.find(qt.term);
        double w = it == cand_score.end() ? 0.0 : it->second;
        double qtw = static_cast<double>(qt.qtf) / qtf_max + beta * w / w_max;
        out.terms.push_back({qt.term, std::max(0.0, qtw), qt.qtf});
        if (it != cand_score.end()) cand_score.erase(it);
    }
    for (const candidate& c : candidates.entries) {
        if (!cand_score.contains(c.term)) continue; // consumed by an original term
        double qtw = beta * c.score / w_max;
        out.terms.push_back({c.term, std::max(0.0, qtw), 0});
    }
    return out;
}

weighted_query reweight_sumcc(const weighted_query& query, const candidate_list& candidates) {
    if (candidates.method != expansion_method::cooccurrence)
        throw method_mismatch_error(
            "sumcc reweighting needs cooccurrence rel scores, candidate list was built by " +
            std::string(to_string(candidates.method)));
    if (query.terms.empty()) throw invalid_argument("reweight_sumcc: empty query");

    double weight_sum = 0.0;
    for (const weighted_term& qt : query.terms) weight_sum += qt.weight;
    if (!(weight_sum > 0.0))
        throw invalid_argument("reweight_sumcc: original query weights sum to zero");

    std::unordered_set<std::string_view> originals;
    for (const weighted_term& qt : query.terms) originals.insert(qt.term);

    weighted_query out = tagged_copy(query, candidates);
    for (const candidate& c : candidates.entries) {
        if (originals.contains(c.term)) continue;
        out.terms.push_back({c.term, c.score / weight_sum, 0});
    }
    return out;
}

weighted_query reweight_kld(const weighted_query& query, const candidate_list& candidates) {
    if (candidates.method != expansion_method::kld)
        throw method_mismatch_error(
            "kld reweighting needs kld scores, candidate list was built by " +
            std::string(to_string(candidates.method)));
    if (query.terms.empty()) throw invalid_argument("reweight_kld: empty query");

    std::unordered_set<std::string_view> originals;
    for (const weighted_term& qt : query.terms) originals.insert(qt.term);

    weighted_query out = tagged_copy(query, candidates);
    for (const candidate& c : candidates.entries) {
        if (originals.contains(c.term)) continue;
        out.terms.push_back({c.term, std::max(0.0, c.score), 0});
    }
    return out;
}

weighted_query reweight_bonorm(const weighted_query& query, const candidate_list& candidates) {
    if (candidates.method != expansion_method::bo1)
        throw method_mismatch_error(
            "bonorm reweighting needs bo1 scores, candidate list was built by " +
            std::string(to_string(candidates.method)));
    if (query.terms.empty()) throw invalid_argument("reweight_bonorm: empty query");

    double sum = 0.0;
    for (const candidate& c : candidates.entries) sum += c.score;
    if (!(sum > 0.0))
        throw invalid_argument("reweight_bonorm: candidate score sum is nonpositive");

    std::unordered_set<std::string_view> originals;
    for (const weighted_term& qt : query.terms) originals.insert(qt.term);

    weighted_query out = tagged_copy(query, candidates);
    for (const candidate& c : candidates.entries) {
        if (originals.contains(c.term)) continue;
        out.terms.push_back({c.term, c.score / sum, 0});
    }
    return out;
}

expansion_outcome expand_query(const searcher& s, const weighted_query& query,
                               const expansion_config& config) {
    config.validate();
    expansion_outcome out;
    out.candidates.topic_id = query.topic_id;
    out.candidates.method = config.method;
    out.candidates.coefficient = config.coefficient;

    ranking first = s.search(query, config.r_docs);
    if (first.hits.empty()) {
        out.query = query;
        out.query.origin = query_origin::expanded;
        out.query.method_tag = to_string(config.method);
        out.no_op = true;
        out.notes.push_back("topic " + query.topic_id +
                            ": first pass retrieved no documents, expansion skipped");
        return out;
    }

    top_set top = build_topset(s.index(), first, config.r_docs);

    bool combined = config.method == expansion_method::bo1_cooccurrence ||
                    config.method == expansion_method::kld_cooccurrence;
    if (combined) {
        size_t base = config.effective_base_list_size();
        expansion_config coo_cfg = config;
        coo_cfg.method = expansion_method::cooccurrence;
        expansion_config dist_cfg = config;
        dist_cfg.method = config.method == expansion_method::bo1_cooccurrence
                              ? expansion_method::bo1
                              : expansion_method::kld;
        candidate_list a = extract_candidates(query, top, coo_cfg, base);
        candidate_list b = extract_candidates(query, top, dist_cfg, base);
        out.candidates = combine_candidates(a, b, config.effective_n_terms());
        out.parents = std::make_pair(std::move(a), std::move(b));
    } else {
        out.candidates = extract_candidates(query, top, config, config.effective_n_terms());
    }

    if (out.candidates.entries.empty()) {
        out.query = query;
        out.query.origin = query_origin::expanded;
        out.query.method_tag = to_string(out.candidates.method);
        out.no_op = true;
        out.notes.push_back("topic " + query.topic_id + ": no expansion candidates, query unchanged");
        return out;
    }

    switch (config.reweight) {
        case reweight_scheme::rocchio:
            out.query = reweight_rocchio(query, out.candidates, config.beta);
            break;
        case reweight_scheme::sumcc:
            out.query = reweight_sumcc(query, out.candidates);
            break;
        case reweight_scheme::kld:
            out.query = reweight_kld(query, out.candidates);
            break;
        case reweight_scheme::bonorm:
            out.query = reweight_bonorm(query, out.candidates);
            break;
    }
    return out;
}

std::string serialize_expanded_query(const weighted_query& q) {
    std::string out = q.topic_id;
    char buf[64];
    for (const weighted_term& t : q.terms) {
        std::snprintf(buf, sizeof(buf), "%.6f", t.weight);
        out += '\t';
        out += t.term;
        out += ':';
        out += buf;
    }
    return out;
}

} // namespace prf
