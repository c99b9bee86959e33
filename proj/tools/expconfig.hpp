#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prf/analyzer.hpp"
#include "prf/expansion.hpp"

namespace prf::cli {

/// Effective experiment settings, assembled from an optional flat
/// `key = value` config file overridden by command-line flags (flags win).
/// Unknown keys are rejected. The canonical dump feeds the provenance hash.
struct experiment_config {
    // paths
    std::string corpus;
    std::string corpus_format = "jsonl"; // jsonl | dir
    std::string index_path;
    std::string topics;
    std::string qrels;
    std::string run_path;      // eval input
    std::string baseline_path; // optional eval comparison run
    std::string out = ".";
    std::string tag;

    // analyzer
    std::string stopwords; // path, optional
    std::string stemmer = "none";
    bool lowercase = true;

    // retrieval and expansion
    std::string mode = "baseline"; // run subcommand: baseline | expanded
    std::string method = "coo";
    std::string coefficient = "tanimoto";
    std::string reweight = "auto";
    std::string cooc_scope_name = "top_set";
    double beta = 0.1;
    size_t r_docs = 10;
    size_t n_terms = 0; // 0 -> per-method default
    size_t base_list_size = 0;
    size_t k = 1000;

    std::vector<size_t> p_points = {5, 10};
    std::vector<size_t> terms_grid = {25, 40, 75};
    std::vector<size_t> docs_grid = {5, 10, 15};

    /// keys that were explicitly given (file or flag), for presence checks
    std::map<std::string, std::string> explicit_keys;

    bool was_set(const std::string& key) const { return explicit_keys.contains(key); }

    analyzer_config make_analyzer() const;
    expansion_config make_expansion() const;
    /// true when any analyzer-affecting key was given explicitly
    bool analyzer_was_configured() const;

    /// sorted `key=value` lines of every effective setting
    std::string canonical_dump() const;
    std::string config_hash() const;
};

/// Parses a flat config file into raw key/value pairs.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// Applies raw pairs (file first, then flag overrides) onto the defaults.
experiment_config make_config(const std::map<std::string, std::string>& file_pairs,
                              const std::map<std::string, std::string>& flag_pairs);

std::vector<size_t> parse_grid(const std::string& spec, const std::string& what);

} // namespace prf::cli
