#include "prf/analyzer.hpp"

#include <fstream>

#include "prf/errors.hpp"
#include "prf/hash.hpp"
#include "prf/stemmer.hpp"

namespace prf {

namespace {

// Decodes one UTF-8 code point starting at i, advancing i. Malformed bytes
// decode to U+FFFD one byte at a time so bad input degrades to separators.
uint32_t decode_utf8(std::string_view s, size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    uint32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xfffd;
    }
    if (i + static_cast<size_t>(len) > s.size()) {
        ++i;
        return 0xfffd;
    }
    for (int k = 1; k < len; ++k) {
        unsigned char bk = static_cast<unsigned char>(s[i + static_cast<size_t>(k)]);
        if ((bk & 0xc0) != 0x80) {
            ++i;
            return 0xfffd;
        }
        cp = (cp << 6) | (bk & 0x3f);
    }
    i += static_cast<size_t>(len);
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

// Word characters: ASCII alphanumerics, and everything from U+00C0 upward
// except the multiplication/division signs and the general punctuation
// blocks. Latin-1 punctuation (including Spanish inverted marks) stays
// below U+00C0 and therefore separates tokens.
bool is_word_cp(uint32_t cp) {
    if (cp < 0x80)
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp < 0xc0) return false;
    if (cp == 0xd7 || cp == 0xf7) return false;
    if (cp == 0xfffd) return false;
    if (cp >= 0x2000 && cp <= 0x206f) return false; // general punctuation
    if (cp >= 0x2e00 && cp <= 0x2e7f) return false; // supplemental punctuation
    if (cp >= 0x3000 && cp <= 0x303f) return false; // CJK punctuation
    return true;
}

// Lowercases ASCII, Latin-1 and Latin Extended-A. Everything else passes
// through unchanged.
uint32_t fold_cp(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) return cp + 0x20;
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14a && cp <= 0x177))
        return (cp % 2 == 0) ? cp + 1 : cp;
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17e))
        return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x178) return 0xff;
    return cp;
}

std::string apply_stemmer(stemmer_kind kind, const std::string& term) {
    switch (kind) {
        case stemmer_kind::none: return term;
        case stemmer_kind::porter_en: return porter_en_stem(term);
        case stemmer_kind::porter_es: return porter_es_stem(term);
    }
    return term;
}

} // namespace

const char* to_string(stemmer_kind k) {
    switch (k) {
        case stemmer_kind::none: return "none";
        case stemmer_kind::porter_en: return "porter_en";
        case stemmer_kind::porter_es: return "porter_es";
    }
    return "none";
}

stemmer_kind stemmer_from_string(std::string_view name) {
    if (name == "none" || name.empty()) return stemmer_kind::none;
    if (name == "en" || name == "english" || name == "porter_en") return stemmer_kind::porter_en;
    if (name == "es" || name == "spanish" || name == "porter_es") return stemmer_kind::porter_es;
    throw invalid_argument("unknown stemmer: " + std::string(name));
}

uint64_t analyzer_config::fingerprint() const {
    std::string canon = "prf-analyzer-v1\n";
    canon += "lowercase=";
    canon += lowercase ? '1' : '0';
    canon += "\nstemmer=";
    canon += to_string(stemmer);
    canon += "\ntokens=word-runs\nstopwords=";
    for (const auto& w : stopwords) { // std::set iterates sorted
        canon += w;
        canon += '\x1f';
    }
    return fnv1a64(canon);
}

void analyzer_config::load_stopwords(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw error("cannot open stopword file: " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t");
        std::string tok = line.substr(b, e - b + 1);
        if (tok.empty() || tok[0] == '#') continue;
        add_stopword(tok);
    }
}

void analyzer_config::add_stopword(std::string_view surface) {
    stopwords.insert(fold(surface, *this));
}

std::string fold(std::string_view token, const analyzer_config& config) {
    if (!config.lowercase) return std::string(token);
    std::string out;
    out.reserve(token.size());
    size_t i = 0;
    while (i < token.size()) append_utf8(out, fold_cp(decode_utf8(token, i)));
    return out;
}

std::vector<std::string> analyze(std::string_view text, const analyzer_config& config) {
    std::vector<std::string> terms;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (!config.stopwords.contains(token)) {
            std::string stemmed = apply_stemmer(config.stemmer, token);
            // a stem can itself land on a stopword; those are dropped too
            if (!stemmed.empty() && !config.stopwords.contains(stemmed)) terms.push_back(std::move(stemmed));
        }
        token.clear();
    };
    size_t i = 0;
    while (i < text.size()) {
        uint32_t cp = decode_utf8(text, i);
        if (is_word_cp(cp)) {
            append_utf8(token, config.lowercase ? fold_cp(cp) : cp);
        } else {
            flush();
        }
    }
    flush();
    return terms;
}

} // namespace prf
