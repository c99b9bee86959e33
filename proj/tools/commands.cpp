#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "prf/errors.hpp"
#include "prf/eval.hpp"
#include "prf/expansion.hpp"
#include "prf/hash.hpp"
#include "prf/index.hpp"
#include "prf/parallel.hpp"
#include "prf/retrieval.hpp"
#include "prf/version.hpp"

namespace prf::cli {

namespace {

struct topic_line {
    std::string id;
    std::string title;
};

std::vector<topic_line> parse_topics(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open topics file: " + path.string());
    std::vector<topic_line> topics;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw format_error(path.string(), lineno, "expected `topic_id<TAB>title`");
        topic_line t{line.substr(0, tab), line.substr(tab + 1)};
        if (t.id.empty() || t.title.empty())
            throw format_error(path.string(), lineno, "empty topic id or title");
        topics.push_back(std::move(t));
    }
    if (topics.empty()) throw error("topics file has no topics: " + path.string());
    return topics;
}

std::vector<std::string> provenance(const experiment_config& cfg, const inverted_index* ix) {
    std::vector<std::string> lines;
    lines.push_back(version_string);
    lines.push_back("config " + cfg.config_hash());
    if (ix) lines.push_back("index " + hex64(ix->fingerprint()));
    return lines;
}

inverted_index load_configured_index(const experiment_config& cfg) {
    if (cfg.index_path.empty()) throw error("no index path given (--index)");
    inverted_index ix = load_index(cfg.index_path);
    if (cfg.analyzer_was_configured()) ensure_analyzer(ix, cfg.make_analyzer());
    return ix;
}

std::string default_tag(const experiment_config& cfg) {
    if (!cfg.tag.empty()) return cfg.tag;
    return cfg.mode == "expanded" ? cfg.method : "baseline";
}

struct topic_result {
    bool has_ranking = false;
    ranking rank;
    std::string expanded_line; // serialized expanded query, expanded mode only
    std::vector<std::string> warnings;
};

/// Shared by run and the sweeps: retrieves every topic, expanding first when
/// a config is given. Expansion failures fall back to the baseline query.
std::vector<topic_result> run_topics(const searcher& s, const std::vector<topic_line>& topics,
                                     const analyzer_config& analyzer, size_t k,
                                     const expansion_config* expand) {
    std::vector<topic_result> results(topics.size());
    parallel_for(topics.size(), [&](size_t i) {
        topic_result& r = results[i];
        weighted_query query;
        try {
            query = parse_query(topics[i].id, topics[i].title, analyzer);
        } catch (const empty_query_error& e) {
            r.warnings.push_back(std::string(e.what()) + "; topic skipped");
            return;
        }
        if (expand) {
            try {
                expansion_outcome out = expand_query(s, query, *expand);
                for (auto& n : out.notes) r.warnings.push_back(std::move(n));
                query = std::move(out.query);
            } catch (const prf::error& e) {
                r.warnings.push_back("topic " + topics[i].id + ": expansion failed (" +
                                     e.what() + "); baseline query used");
            }
            r.expanded_line = serialize_expanded_query(query);
        }
        r.rank = s.search(query, k);
        r.has_ranking = true;
    });
    return results;
}

run collect_run(const std::vector<topic_result>& results, const std::string& tag) {
    run out;
    out.tag = tag;
    for (const auto& r : results) {
        if (!r.has_ranking || r.rank.hits.empty()) continue;
        auto& hits = out.results[r.rank.topic_id];
        for (const auto& h : r.rank.hits) hits.emplace_back(h.doc_id, h.score);
    }
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot open for writing: " + path.string());
    return out;
}

// one sweep grid point
struct sweep_row {
    std::string method;
    size_t param = 0;
    bool failed = false;
    double map = 0.0;
    double r_prec = 0.0;
};

void write_sweep_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<sweep_row>& rows) {
    for (const auto& h : header) os << "# " << h << '\n';
    os << "method,param,map,r_prec\n";
    char buf[64];
    for (const auto& r : rows) {
        if (r.failed) {
            os << r.method << ',' << r.param << ",error,error\n";
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%.6f", r.map);
        os << r.method << ',' << r.param << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.6f", r.r_prec);
        os << ',' << buf << '\n';
    }
}

int run_sweep(const experiment_config& cfg, std::ostream& out, std::ostream& err,
              bool sweep_terms) {
    if (cfg.topics.empty()) throw error("no topics file given (--topics)");
    if (cfg.qrels.empty()) throw error("no qrels file given (--qrels)");

    inverted_index ix = load_configured_index(cfg);
    searcher s(ix);
    auto topics = parse_topics(cfg.topics);
    auto judgments = parse_qrels(cfg.qrels);

    std::vector<std::string> methods;
    if (cfg.was_set("method")) {
        methods.push_back(cfg.method);
    } else {
        methods = {"coo", "kld", "bo1", "boco", "kldco"};
    }
    const std::vector<size_t>& grid = sweep_terms ? cfg.terms_grid : cfg.docs_grid;

    std::vector<sweep_row> rows(methods.size() * grid.size());
    std::vector<std::string> row_errors(rows.size());
    parallel_for(rows.size(), [&](size_t i) {
        const std::string& method = methods[i / grid.size()];
        size_t param = grid[i % grid.size()];
        sweep_row& row = rows[i];
        row.method = method;
        row.param = param;
        try {
            experiment_config point = cfg;
            point.method = method;
            if (sweep_terms) {
                point.n_terms = param;
            } else {
                point.r_docs = param;
                // n_terms stays at the method default unless pinned by hand
            }
            expansion_config ec = point.make_expansion();
            auto results = run_topics(s, topics, ix.analyzer(), cfg.k, &ec);
            run r = collect_run(results, method);
            eval_report report = evaluate(r, judgments, cfg.p_points);
            row.map = report.map;
            row.r_prec = report.r_prec;
        } catch (const std::exception& e) {
            row.failed = true;
            row_errors[i] = e.what();
        }
    });

    auto csv_path = std::filesystem::path(cfg.out) /
                    (sweep_terms ? "sweep_terms.csv" : "sweep_docs.csv");
    auto os = open_out(csv_path);
    write_sweep_csv(os, provenance(cfg, &ix), rows);
    os.close();

    bool any_failed = false;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].failed) continue;
        any_failed = true;
        err << "sweep point " << rows[i].method << "," << rows[i].param << " failed: "
            << row_errors[i] << '\n';
    }
    out << "wrote " << csv_path.string() << " (" << rows.size() << " points)\n";
    return any_failed ? 1 : 0;
}

} // namespace

int cmd_index(const experiment_config& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    if (cfg.corpus.empty()) throw error("no corpus path given (--corpus)");
    if (cfg.index_path.empty()) throw error("no index output path given (--index)");

    analyzer_config analyzer = cfg.make_analyzer();
    corpus_reader reader = cfg.corpus_format == "dir" ? dir_corpus(cfg.corpus)
                                                      : jsonl_corpus(cfg.corpus);
    inverted_index ix = build_index(reader, analyzer);
    std::filesystem::path path = cfg.index_path;
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    save_index(ix, path);
    out << "indexed N=" << ix.n_docs() << " vocab=" << ix.vocab_size()
        << " tokens=" << ix.total_tokens() << " fingerprint=" << hex64(ix.fingerprint())
        << " -> " << path.string() << '\n';
    return 0;
}

int cmd_run(const experiment_config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.topics.empty()) throw error("no topics file given (--topics)");
    bool expanded = cfg.mode == "expanded";

    inverted_index ix = load_configured_index(cfg);
    searcher s(ix);
    auto topics = parse_topics(cfg.topics);

    expansion_config ec;
    if (expanded) ec = cfg.make_expansion();
    auto results = run_topics(s, topics, ix.analyzer(), cfg.k, expanded ? &ec : nullptr);
    for (const auto& r : results)
        for (const auto& w : r.warnings) err << w << '\n';

    std::string tag = default_tag(cfg);
    run r = collect_run(results, tag);

    std::filesystem::create_directories(cfg.out);
    auto run_path = std::filesystem::path(cfg.out) / (tag + ".run");
    write_run(r, run_path, provenance(cfg, &ix));
    out << "wrote " << run_path.string() << " (" << r.results.size() << " topics)\n";

    if (expanded) {
        auto q_path = std::filesystem::path(cfg.out) / (tag + ".queries.tsv");
        auto qs = open_out(q_path);
        for (const auto& h : provenance(cfg, &ix)) qs << "# " << h << '\n';
        for (const auto& res : results)
            if (!res.expanded_line.empty()) qs << res.expanded_line << '\n';
        qs.close();
        out << "wrote " << q_path.string() << '\n';
    }
    return 0;
}

int cmd_eval(const experiment_config& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    if (cfg.run_path.empty()) throw error("no run file given (--run)");
    if (cfg.qrels.empty()) throw error("no qrels file given (--qrels)");

    run r = parse_run(cfg.run_path);
    qrels q = parse_qrels(cfg.qrels);
    eval_report report = evaluate(r, q, cfg.p_points);

    std::optional<eval_report> base;
    if (!cfg.baseline_path.empty())
        base = evaluate(parse_run(cfg.baseline_path), q, cfg.p_points);

    print_report(out, report, base ? &*base : nullptr);

    std::filesystem::create_directories(cfg.out);
    auto csv_path = std::filesystem::path(cfg.out) /
                    (std::filesystem::path(cfg.run_path).stem().string() + ".eval.csv");
    auto os = open_out(csv_path);
    write_report_csv(os, report, provenance(cfg, nullptr));
    os.close();
    out << "wrote " << csv_path.string() << '\n';
    return 0;
}

int cmd_sweep_terms(const experiment_config& cfg, std::ostream& out, std::ostream& err) {
    return run_sweep(cfg, out, err, true);
}

int cmd_sweep_docs(const experiment_config& cfg, std::ostream& out, std::ostream& err) {
    return run_sweep(cfg, out, err, false);
}

} // namespace prf::cli
