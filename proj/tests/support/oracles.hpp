#pragma once

// Brute-force reference implementations used as oracles. Everything here
// recomputes results from first-principles definitions over the raw inputs,
// deliberately avoiding the index/posting machinery under test.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "prf/analyzer.hpp"
#include "prf/eval.hpp"
#include "prf/expansion.hpp"
#include "prf/index.hpp"
#include "prf/retrieval.hpp"

namespace prf::testing {

/// Reference evaluator: recomputes AP, R-precision and P@X by walking ranks,
/// and GMAP as the n-th root of the floored AP product (a different
/// arithmetic path from the implementation's exp-of-mean-logs).
struct ref_measures {
    double map = 0.0;
    double gmap = 0.0;
    double r_prec = 0.0;
    std::map<size_t, double> p_at;
    std::map<std::string, double> per_topic_ap;
};

ref_measures ref_evaluate(const run& r, const qrels& q, const std::vector<size_t>& p_points);

/// Reference scorer: analyzes the raw corpus itself and scores one query
/// against every document by scanning analyzed term lists, never touching
/// an inverted_index. Returns (doc_id, score) sorted (score desc, id asc).
std::vector<std::pair<std::string, double>> ref_search(const std::vector<raw_doc>& corpus,
                                                       const analyzer_config& config,
                                                       const weighted_query& query);

/// Reference candidate extraction: recounts feedback statistics from the raw
/// corpus for the given feedback doc ids and re-scores every top-set term.
std::vector<candidate> ref_extract(const std::vector<raw_doc>& corpus,
                                   const analyzer_config& config,
                                   const std::vector<std::string>& feedback_ids,
                                   const weighted_query& query, expansion_method base_method,
                                   cooc_coefficient coefficient, cooc_scope scope, size_t limit);

} // namespace prf::testing
