#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prf/index.hpp"
#include "prf/retrieval.hpp"

namespace prf {

enum class cooc_coefficient { tanimoto, dice, cosine };

/// Candidate-term selection methods. The combined variants intersect a
/// cooccurrence list with a distributional list and keep the cooccurrence
/// ranking.
enum class expansion_method { cooccurrence, kld, bo1, bo1_cooccurrence, kld_cooccurrence };

enum class reweight_scheme { rocchio, sumcc, kld, bonorm };

/// Where the cooccurrence counts c_i, c_j, c_ij come from: the feedback set
/// (default) or the whole collection.
enum class cooc_scope { top_set, collection };

const char* to_string(cooc_coefficient c);
const char* to_string(expansion_method m);
const char* to_string(reweight_scheme r);
const char* to_string(cooc_scope s);
cooc_coefficient coefficient_from_string(std::string_view name);
expansion_method method_from_string(std::string_view name);
reweight_scheme reweight_from_string(std::string_view name);
cooc_scope scope_from_string(std::string_view name);

/// Candidate-count defaults from the parameter study: 25 for cooccurrence,
/// 40 for the distributional methods, 75 for the combined ones.
size_t default_n_terms(expansion_method m);

/// The reweighting each method pairs best with: Rocchio for cooccurrence and
/// the combined methods, each distributional method's own scheme otherwise.
reweight_scheme default_reweight(expansion_method m);

/// Term statistics over the R top-ranked feedback documents.
struct top_set {
    struct term_entry {
        uint32_t term;      // ordinal in the underlying index
        uint32_t doc_count; // feedback documents containing the term (c_i)
        uint64_t tf_sum;    // summed tf over feedback documents (tf_x)
    };

    std::string topic_id;
    size_t r_docs = 0; // actual number of documents used
    std::vector<uint32_t> doc_ordinals;
    std::vector<term_entry> terms; // sorted by term ordinal
    uint64_t total_tokens = 0;
    const inverted_index* ix = nullptr;

    const term_entry* find(uint32_t term_ordinal) const;
    uint32_t doc_count(uint32_t term_ordinal) const;
    uint64_t tf_sum(uint32_t term_ordinal) const;
    /// Feedback documents containing both terms (c_ij).
    uint32_t pair_doc_count(uint32_t term_a, uint32_t term_b) const;
};

/// Statistics of the feedback set: per-term document counts, summed term
/// frequencies and total token count over the first min(r_docs, |ranking|)
/// documents. Empty rankings are rejected.
top_set build_topset(const inverted_index& ix, const ranking& r, size_t r_docs);

/// Document-count similarity between two terms.
///   tanimoto = c_ij / (c_i + c_j - c_ij)
///   dice     = 2 c_ij / (c_i + c_j)
///   cosine   = c_ij / sqrt(c_i c_j)
/// Requires c_i, c_j >= 1 and 0 <= c_ij <= min(c_i, c_j).
double cc_coefficient(cooc_coefficient kind, uint64_t c_i, uint64_t c_j, uint64_t c_ij);

/// rel(q, t_e) = sum over query terms t_i of q_i * CC(t_i, t_e), where q_i is
/// the original query weight. Query terms without counts in scope add 0.
double rel_score(const weighted_query& query, std::string_view candidate, const top_set& top,
                 cooc_coefficient kind, cooc_scope scope = cooc_scope::top_set);

/// p_r * log2(p_r / p_c); positive when the term is denser in the feedback
/// set than in the collection.
double kld_score(double p_r, double p_c);

/// Bose-Einstein informativeness: tf_x * log2((1+P_n)/P_n) + log2(1+P_n)
/// with P_n = f / n_docs.
double bo1_score(double tf_x, double f, double n_docs);

struct candidate {
    std::string term;
    double score;
    friend bool operator==(const candidate&, const candidate&) = default;
};

/// Ranked candidate terms with provenance. Never contains original-query
/// terms; entries are strictly ordered by (score desc, term asc).
struct candidate_list {
    std::string topic_id;
    expansion_method method = expansion_method::cooccurrence;
    cooc_coefficient coefficient = cooc_coefficient::tanimoto; // cooccurrence provenance
    std::vector<candidate> entries;
    size_t r_docs = 0; // parameters used
    size_t limit = 0;  // list size cap L
};

struct expansion_config {
    expansion_method method = expansion_method::cooccurrence;
    cooc_coefficient coefficient = cooc_coefficient::tanimoto;
    reweight_scheme reweight = reweight_scheme::rocchio;
    size_t r_docs = 10;
    size_t n_terms = 0;        // 0 -> default_n_terms(method)
    size_t base_list_size = 0; // combined only; 0 -> 3 * n_terms
    double beta = 0.1;
    cooc_scope scope = cooc_scope::top_set;

    size_t effective_n_terms() const;
    size_t effective_base_list_size() const;
    void validate() const;
};

/// Scores every top-set term outside the original query with the configured
/// base method (cooccurrence, kld or bo1) and keeps the top `limit`.
/// Cooccurrence candidates must actually cooccur: entries with rel <= 0 are
/// dropped. KLD keeps nonpositive scores (they rank last).
candidate_list extract_candidates(const weighted_query& query, const top_set& top,
                                  const expansion_config& config, size_t limit);

/// Terms present in both lists, ranked by the cooccurrence list's scores and
/// truncated to n_terms. list_a must be a cooccurrence list, list_b a
/// distributional one, both over the same topic with limits >= n_terms.
candidate_list combine_candidates(const candidate_list& list_a, const candidate_list& list_b,
                                  size_t n_terms);

/// Rocchio's beta formula: qtw = qtf/qtf_max + beta * w(t)/w_max. Original
/// terms keep w(t) = 0 unless they appear in the candidate list; negative
/// results clamp to zero. Empty candidate lists return the query unchanged
/// (weights intact, origin marked expanded).
weighted_query reweight_rocchio(const weighted_query& query, const candidate_list& candidates,
                                double beta);

/// qtw = rel(q, t_e) / sum of original query weights; original terms keep
/// their weights. Candidates must come from the cooccurrence method.
weighted_query reweight_sumcc(const weighted_query& query, const candidate_list& candidates);

/// Expansion terms take their KLD score (clamped below at zero); original
/// terms keep their weights. Candidates must come from the KLD method.
weighted_query reweight_kld(const weighted_query& query, const candidate_list& candidates);

/// Expansion terms take Bo(t) / sum of all candidate Bo values, so their
/// weights sum to one; original terms keep their weights. Candidates must
/// come from the Bo1 method.
weighted_query reweight_bonorm(const weighted_query& query, const candidate_list& candidates);

struct expansion_outcome {
    weighted_query query;
    candidate_list candidates;
    /// Base lists behind a combined method (cooccurrence first).
    std::optional<std::pair<candidate_list, candidate_list>> parents;
    std::vector<std::string> notes; // degenerate-pipeline warnings
    bool no_op = false;             // query returned without reweighting
};

/// Full pipeline: first-pass search (k = r_docs), top-set statistics,
/// candidate extraction (twice plus intersection for combined methods),
/// reweighting. Zero first-pass hits or an empty candidate list yield the
/// original query back, tagged as expanded, with a note.
expansion_outcome expand_query(const searcher& s, const weighted_query& query,
                               const expansion_config& config);

/// `topic_id <TAB> term:weight ...`, weights at 6 decimals, rank order.
std::string serialize_expanded_query(const weighted_query& q);

} // namespace prf
