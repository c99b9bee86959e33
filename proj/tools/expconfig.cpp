#include "expconfig.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "prf/errors.hpp"
#include "prf/hash.hpp"

namespace prf::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "corpus",    "corpus_format", "index",     "topics",    "qrels",
        "run",       "baseline",      "out",       "tag",       "stopwords",
        "stemmer",   "lowercase",     "mode",      "method",    "coefficient",
        "reweight",  "cooc_scope",    "beta",      "r_docs",    "n_terms",
        "base_list_size", "k",        "p_points",  "terms_grid", "docs_grid",
    };
    return keys;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

size_t parse_count(const std::string& v, const std::string& key) {
    try {
        long long n = std::stoll(v);
        if (n < 0) throw std::out_of_range("negative");
        return static_cast<size_t>(n);
    } catch (const std::exception&) {
        throw invalid_argument("config: " + key + " expects a nonnegative integer, got '" + v +
                               "'");
    }
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw invalid_argument("config: " + key + " expects a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw invalid_argument("config: " + key + " expects true or false, got '" + v + "'");
}

} // namespace

std::vector<size_t> parse_grid(const std::string& spec, const std::string& what) {
    std::vector<size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_count(item, what));
    }
    if (out.empty()) throw invalid_argument(what + ": empty grid '" + spec + "'");
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open config file: " + path.string());
    std::map<std::string, std::string> pairs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw format_error(path.string(), lineno, "expected `key = value`");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!known_keys().contains(key))
            throw format_error(path.string(), lineno, "unknown config key '" + key + "'");
        pairs[key] = value;
    }
    return pairs;
}

experiment_config make_config(const std::map<std::string, std::string>& file_pairs,
                              const std::map<std::string, std::string>& flag_pairs) {
    experiment_config cfg;
    std::map<std::string, std::string> merged = file_pairs;
    for (const auto& [k, v] : flag_pairs) merged[k] = v; // flags win
    cfg.explicit_keys = merged;

    for (const auto& [key, value] : merged) {
        if (!known_keys().contains(key))
            throw invalid_argument("unknown config key '" + key + "'");
        if (key == "corpus") cfg.corpus = value;
        else if (key == "corpus_format") {
            if (value != "jsonl" && value != "dir")
                throw invalid_argument("corpus_format must be jsonl or dir");
            cfg.corpus_format = value;
        } else if (key == "index") cfg.index_path = value;
        else if (key == "topics") cfg.topics = value;
        else if (key == "qrels") cfg.qrels = value;
        else if (key == "run") cfg.run_path = value;
        else if (key == "baseline") cfg.baseline_path = value;
        else if (key == "out") cfg.out = value;
        else if (key == "tag") cfg.tag = value;
        else if (key == "stopwords") cfg.stopwords = value;
        else if (key == "stemmer") cfg.stemmer = to_string(stemmer_from_string(value));
        else if (key == "lowercase") cfg.lowercase = parse_bool(value, key);
        else if (key == "mode") {
            if (value != "baseline" && value != "expanded")
                throw invalid_argument("mode must be baseline or expanded");
            cfg.mode = value;
        } else if (key == "method") cfg.method = to_string(method_from_string(value));
        else if (key == "coefficient")
            cfg.coefficient = to_string(coefficient_from_string(value));
        else if (key == "reweight") {
            if (value != "auto") reweight_from_string(value); // validate
            cfg.reweight = value;
        } else if (key == "cooc_scope") cfg.cooc_scope_name = to_string(scope_from_string(value));
        else if (key == "beta") cfg.beta = parse_real(value, key);
        else if (key == "r_docs") cfg.r_docs = parse_count(value, key);
        else if (key == "n_terms") cfg.n_terms = parse_count(value, key);
        else if (key == "base_list_size") cfg.base_list_size = parse_count(value, key);
        else if (key == "k") cfg.k = parse_count(value, key);
        else if (key == "p_points") cfg.p_points = parse_grid(value, key);
        else if (key == "terms_grid") cfg.terms_grid = parse_grid(value, key);
        else if (key == "docs_grid") cfg.docs_grid = parse_grid(value, key);
    }
    return cfg;
}

analyzer_config experiment_config::make_analyzer() const {
    analyzer_config a;
    a.lowercase = lowercase;
    a.stemmer = stemmer_from_string(stemmer);
    if (!stopwords.empty()) a.load_stopwords(stopwords);
    return a;
}

bool experiment_config::analyzer_was_configured() const {
    return was_set("stopwords") || was_set("stemmer") || was_set("lowercase");
}

expansion_config experiment_config::make_expansion() const {
    expansion_config e;
    e.method = method_from_string(method);
    e.coefficient = coefficient_from_string(coefficient);
    e.reweight = reweight == "auto" ? default_reweight(e.method) : reweight_from_string(reweight);
    e.r_docs = r_docs;
    e.n_terms = n_terms;
    e.base_list_size = base_list_size;
    e.beta = beta;
    e.scope = scope_from_string(cooc_scope_name);
    e.validate();
    return e;
}

std::string experiment_config::canonical_dump() const {
    auto grid = [](const std::vector<size_t>& g) {
        std::string s;
        for (size_t v : g) {
            if (!s.empty()) s += ',';
            s += std::to_string(v);
        }
        return s;
    };
    char betabuf[32];
    std::snprintf(betabuf, sizeof(betabuf), "%.17g", beta);
    std::map<std::string, std::string> kv = {
        {"corpus", corpus},
        {"corpus_format", corpus_format},
        {"index", index_path},
        {"topics", topics},
        {"qrels", qrels},
        {"run", run_path},
        {"baseline", baseline_path},
        {"out", out},
        {"tag", tag},
        {"stopwords", stopwords},
        {"stemmer", stemmer},
        {"lowercase", lowercase ? "true" : "false"},
        {"mode", mode},
        {"method", method},
        {"coefficient", coefficient},
        {"reweight", reweight},
        {"cooc_scope", cooc_scope_name},
        {"beta", betabuf},
        {"r_docs", std::to_string(r_docs)},
        {"n_terms", std::to_string(n_terms)},
        {"base_list_size", std::to_string(base_list_size)},
        {"k", std::to_string(k)},
        {"p_points", grid(p_points)},
        {"terms_grid", grid(terms_grid)},
        {"docs_grid", grid(docs_grid)},
    };
    std::string dump;
    for (const auto& [k, v] : kv) dump += k + "=" + v + "\n";
    return dump;
}

std::string experiment_config::config_hash() const { return hex64(fnv1a64(canonical_dump())); }

} // namespace prf::cli
