#pragma once

#include <string>
#include <vector>

#include "prf/analyzer.hpp"
#include "prf/index.hpp"

namespace prf {

enum class query_origin { original, expanded };

struct weighted_term {
    std::string term;
    double weight = 0.0; // nonnegative; equals qtf for original queries
    uint32_t qtf = 0;    // 0 exactly for expansion-added terms
    friend bool operator==(const weighted_term&, const weighted_term&) = default;
};

/// Ordered set of unique (term, weight) pairs with original-query term
/// frequencies retained for reweighting.
struct weighted_query {
    std::string topic_id;
    std::vector<weighted_term> terms;
    query_origin origin = query_origin::original;
    std::string method_tag; // empty for original queries

    uint32_t qtf_max() const;
    double original_weight_sum() const; // sum of q_i over original terms
};

struct hit {
    std::string doc_id;
    double score;
};

/// Strictly ordered by (score desc, doc_id asc); no duplicate documents.
struct ranking {
    std::string topic_id;
    std::vector<hit> hits;
};

/// Analyzes a topic title with the same configuration as indexing;
/// weight = qtf, origin = original. Throws empty_query_error when nothing
/// survives analysis.
weighted_query parse_query(const std::string& topic_id, std::string_view title,
                           const analyzer_config& config);

/// Vector-space scorer over a committed index:
///   score(d,q) = sum over matching terms of w_q(t) * (1 + log2 tf) * idf(t),
///   divided by norm(d), with idf(t) = log2(1 + N/df(t)) and
///   norm(d) = sqrt(sum over all terms of d of ((1 + log2 tf) * idf)^2).
/// Per-document norms and idf are precomputed at construction. Query terms
/// with weight <= 0 or absent from the vocabulary contribute nothing and
/// never pull a document into the result. Read-only and safe to share
/// across threads.
class searcher {
public:
    explicit searcher(const inverted_index& ix);

    ranking search(const weighted_query& query, size_t k) const;

    double idf(uint32_t term_ordinal) const { return idf_[term_ordinal]; }
    double norm(uint32_t doc_ordinal) const { return norms_[doc_ordinal]; }
    const inverted_index& index() const { return ix_; }

private:
    const inverted_index& ix_;
    std::vector<double> idf_;
    std::vector<double> norms_;
};

} // namespace prf
