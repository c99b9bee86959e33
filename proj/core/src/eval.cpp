#include "prf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "prf/errors.hpp"

namespace prf {

const std::set<std::string>* qrels::relevant_for(const std::string& topic) const {
    auto it = judgments.find(topic);
    return it == judgments.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool skippable(const std::string& line) {
    size_t b = line.find_first_not_of(" \t\r");
    return b == std::string::npos || line[b] == '#';
}

} // namespace

qrels parse_qrels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open qrels file: " + path.string());
    qrels q;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto fields = split_ws(line);
        if (fields.size() != 4)
            throw format_error(path.string(), lineno, "expected `topic 0 docid rel`");
        long rel = 0;
        try {
            rel = std::stol(fields[3]);
        } catch (const std::exception&) {
            throw format_error(path.string(), lineno, "relevance is not an integer");
        }
        auto& topic = q.judgments[fields[0]]; // registers the topic as judged
        if (rel > 0) topic.insert(fields[2]);
    }
    return q;
}

run parse_run(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open run file: " + path.string());
    run r;
    std::unordered_set<std::string> seen;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto fields = split_ws(line);
        if (fields.size() != 6)
            throw format_error(path.string(), lineno, "expected `topic Q0 docid rank score tag`");
        double score = 0.0;
        try {
            score = std::stod(fields[4]);
        } catch (const std::exception&) {
            throw format_error(path.string(), lineno, "score is not a number");
        }
        std::string key = fields[0] + '\x1f' + fields[2];
        if (!seen.insert(key).second)
            throw format_error(path.string(), lineno,
                               "duplicate document " + fields[2] + " for topic " + fields[0]);
        auto& topic = r.results[fields[0]];
        if (!topic.empty() && score > topic.back().second)
            throw format_error(path.string(), lineno, "scores must be non-increasing per topic");
        topic.emplace_back(fields[2], score);
        if (r.tag.empty()) r.tag = fields[5];
    }
    return r;
}

void write_run(const run& r, const std::filesystem::path& path,
               const std::vector<std::string>& header_lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot open run file for writing: " + path.string());
    for (const auto& h : header_lines) out << "# " << h << '\n';
    char buf[64];
    for (const auto& [topic, hits] : r.results) {
        size_t rank = 0;
        for (const auto& [doc, score] : hits) {
            std::snprintf(buf, sizeof(buf), "%.6f", score);
            out << topic << " Q0 " << doc << ' ' << ++rank << ' ' << buf << ' ' << r.tag << '\n';
        }
    }
    if (!out) throw error("write failed: " + path.string());
}

double average_precision(std::span<const std::string> hits,
                         const std::set<std::string>& relevant) {
    if (relevant.empty()) throw invalid_argument("average_precision: empty relevant set");
    double sum = 0.0;
    size_t found = 0;
    for (size_t i = 0; i < hits.size(); ++i) {
        if (relevant.contains(hits[i])) {
            ++found;
            sum += static_cast<double>(found) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

double precision_at(std::span<const std::string> hits, const std::set<std::string>& relevant,
                    size_t x) {
    if (x < 1) throw invalid_argument("precision_at: x must be >= 1");
    size_t upto = std::min(x, hits.size());
    size_t found = 0;
    for (size_t i = 0; i < upto; ++i)
        if (relevant.contains(hits[i])) ++found;
    return static_cast<double>(found) / static_cast<double>(x);
}

double r_precision(std::span<const std::string> hits, const std::set<std::string>& relevant) {
    if (relevant.empty()) throw invalid_argument("r_precision: empty relevant set");
    return precision_at(hits, relevant, relevant.size());
}

eval_report evaluate(const run& r, const qrels& q, const std::vector<size_t>& p_points) {
    eval_report report;
    report.run_tag = r.tag;

    static const std::vector<std::string> no_hits;
    double ap_sum = 0.0, log_ap_sum = 0.0, rp_sum = 0.0;
    std::map<size_t, double> p_sums;
    for (size_t x : p_points) p_sums[x] = 0.0;

    for (const auto& [topic, relevant] : q.judgments) {
        if (relevant.empty()) {
            report.skipped.push_back(topic); // judged but nothing relevant
            continue;
        }
        std::vector<std::string> ids;
        if (auto it = r.results.find(topic); it != r.results.end()) {
            ids.reserve(it->second.size());
            for (const auto& [doc, score] : it->second) ids.push_back(doc);
        }
        topic_measures m;
        m.ap = average_precision(ids, relevant);
        m.r_prec = r_precision(ids, relevant);
        for (size_t x : p_points) m.p_at[x] = precision_at(ids, relevant, x);

        ap_sum += m.ap;
        log_ap_sum += std::log(std::max(m.ap, gmap_epsilon));
        rp_sum += m.r_prec;
        for (size_t x : p_points) p_sums[x] += m.p_at[x];
        report.per_topic.emplace(topic, std::move(m));
    }

    for (const auto& [topic, hits] : r.results)
        if (!q.judgments.contains(topic)) report.skipped.push_back(topic);

    if (report.per_topic.empty())
        throw error("evaluate: no judged topic has relevant documents");

    double n = static_cast<double>(report.per_topic.size());
    report.map = ap_sum / n;
    report.gmap = std::exp(log_ap_sum / n);
    report.r_prec = rp_sum / n;
    for (size_t x : p_points) report.p_at[x] = p_sums[x] / n;
    return report;
}

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string improvement(double current, double base) {
    if (base == 0.0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.2f%%", (current - base) / base * 100.0);
    return buf;
}

} // namespace

void print_report(std::ostream& out, const eval_report& report, const eval_report* baseline) {
    out << "topic        ap       r_prec  ";
    for (const auto& [x, v] : report.p_at) out << " p@" << x << (x < 10 ? "     " : "    ");
    out << '\n';
    for (const auto& [topic, m] : report.per_topic) {
        out << topic;
        for (size_t pad = topic.size(); pad < 11; ++pad) out << ' ';
        out << ' ' << fixed4(m.ap) << "   " << fixed4(m.r_prec) << " ";
        for (const auto& [x, v] : m.p_at) out << "  " << fixed4(v);
        out << '\n';
    }
    out << "all (map)   " << fixed4(report.map) << "   " << fixed4(report.r_prec) << " ";
    for (const auto& [x, v] : report.p_at) out << "  " << fixed4(v);
    out << '\n';
    out << "gmap        " << fixed4(report.gmap) << '\n';
    if (!report.skipped.empty()) {
        out << "skipped topics:";
        for (const auto& t : report.skipped) out << ' ' << t;
        out << '\n';
    }
    if (baseline) {
        out << '\n'
            << "measure   " << report.run_tag << "  vs  " << baseline->run_tag << '\n';
        out << "map       " << fixed4(report.map) << " vs " << fixed4(baseline->map) << "  "
            << improvement(report.map, baseline->map) << '\n';
        out << "gmap      " << fixed4(report.gmap) << " vs " << fixed4(baseline->gmap) << "  "
            << improvement(report.gmap, baseline->gmap) << '\n';
        out << "r_prec    " << fixed4(report.r_prec) << " vs " << fixed4(baseline->r_prec) << "  "
            << improvement(report.r_prec, baseline->r_prec) << '\n';
        for (const auto& [x, v] : report.p_at) {
            auto it = baseline->p_at.find(x);
            if (it == baseline->p_at.end()) continue;
            out << "p@" << x << (x < 10 ? "       " : "      ") << fixed4(v) << " vs "
                << fixed4(it->second) << "  " << improvement(v, it->second) << '\n';
        }
    }
}

void write_report_csv(std::ostream& out, const eval_report& report,
                      const std::vector<std::string>& header_lines) {
    for (const auto& h : header_lines) out << "# " << h << '\n';
    out << "topic,ap,r_prec";
    for (const auto& [x, v] : report.p_at) out << ",p@" << x;
    out << '\n';
    for (const auto& [topic, m] : report.per_topic) {
        out << topic << ',' << full(m.ap) << ',' << full(m.r_prec);
        for (const auto& [x, v] : m.p_at) out << ',' << full(v);
        out << '\n';
    }
    out << "all," << full(report.map) << ',' << full(report.r_prec);
    for (const auto& [x, v] : report.p_at) out << ',' << full(v);
    out << '\n';
    out << "gmap," << full(report.gmap);
    for (size_t i = 0; i < report.p_at.size() + 1; ++i) out << ',';
    out << '\n';
}

} // namespace prf
