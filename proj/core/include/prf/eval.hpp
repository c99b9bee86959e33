#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace prf {

/// Binary relevance judgments. Topics whose judgments are all nonpositive
/// stay present with an empty relevant set; evaluate() skips them.
struct qrels {
    std::map<std::string, std::set<std::string>> judgments; // topic -> relevant ids

    const std::set<std::string>* relevant_for(const std::string& topic) const;
};

/// Ranked results per topic, strictly ordered as produced by retrieval.
struct run {
    std::string tag;
    std::map<std::string, std::vector<std::pair<std::string, double>>> results;
};

/// `topic 0 docid rel` lines, whitespace-separated; rel > 0 means relevant.
/// '#' comment lines and blank lines are skipped. Malformed lines raise
/// format_error with the line number.
qrels parse_qrels(const std::filesystem::path& path);

/// TREC run lines `topic Q0 docid rank score tag`. parse_run enforces unique
/// (topic, docid) pairs and non-increasing scores per topic; file order is
/// preserved. write_run emits ranks 1-based and scores at 6 decimals, after
/// any provided '#' header lines; topics with no results are absent.
run parse_run(const std::filesystem::path& path);
void write_run(const run& r, const std::filesystem::path& path,
               const std::vector<std::string>& header_lines = {});

/// Mean of precision at each relevant document's rank, over |relevant|;
/// relevant documents never retrieved contribute zero.
double average_precision(std::span<const std::string> hits, const std::set<std::string>& relevant);

/// Relevant documents in the first x positions divided by x; missing
/// documents count as non-relevant.
double precision_at(std::span<const std::string> hits, const std::set<std::string>& relevant,
                    size_t x);

/// precision_at with x = |relevant|.
double r_precision(std::span<const std::string> hits, const std::set<std::string>& relevant);

struct topic_measures {
    double ap = 0.0;
    double r_prec = 0.0;
    std::map<size_t, double> p_at;
};

struct eval_report {
    std::string run_tag;
    std::map<std::string, topic_measures> per_topic; // evaluated topics only
    double map = 0.0;
    double gmap = 0.0;
    double r_prec = 0.0;              // arithmetic mean
    std::map<size_t, double> p_at;    // arithmetic means
    std::vector<std::string> skipped; // zero-relevant or unjudged topics
};

inline constexpr double gmap_epsilon = 1e-5;

/// Per-topic and aggregate measures. Judged topics missing from the run
/// score zero (they still count toward the means); run topics without
/// judgments are skipped. GMAP applies a 1e-5 floor to each AP before the
/// geometric mean. Throws when no judged topic has a relevant document.
eval_report evaluate(const run& r, const qrels& q, const std::vector<size_t>& p_points = {5, 10});

/// Human-readable table, 4 decimals, one row per topic plus aggregates.
/// When baseline is given, a comparison block with percentage improvements
/// ("+19.29%") is appended.
void print_report(std::ostream& out, const eval_report& report,
                  const eval_report* baseline = nullptr);

/// Machine-readable CSV `topic,ap,r_prec,p@5,p@10` at full precision, then
/// an `all` aggregate row and a `gmap` row (`ap` column only). Header lines
/// are emitted first as '#' comments.
void write_report_csv(std::ostream& out, const eval_report& report,
                      const std::vector<std::string>& header_lines = {});

} // namespace prf
