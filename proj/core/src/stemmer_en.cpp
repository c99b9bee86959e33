#include "prf/stemmer.hpp"

#include <array>
#include <cstring>

// Classic Porter stemmer, the 1980 algorithm as published.

namespace prf {

namespace {

bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

class porter {
public:
    explicit porter(std::string w) : b(std::move(w)) {}

    std::string run() {
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b;
    }

private:
    std::string b;

    // true when b[i] is a consonant ('y' counts as a vowel after a consonant)
    bool cons(size_t i) const {
        char c = b[i];
        if (is_vowel_letter(c)) return false;
        if (c == 'y') return i == 0 ? true : !cons(i - 1);
        return true;
    }

    // measure of b[0..j): number of VC sequences in [C](VC)^m[V]
    int measure(size_t j) const {
        int m = 0;
        size_t i = 0;
        while (true) {
            if (i >= j) return m;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i >= j) return m;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++m;
            while (true) {
                if (i >= j) return m;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem(size_t j) const {
        for (size_t i = 0; i < j; ++i)
            if (!cons(i)) return true;
        return false;
    }

    // the doubles the reference implementation recognizes (l, s, z are
    // handled by their own rules and the rest never shorten)
    bool double_cons_at_end(size_t j) const {
        if (j < 2 || b[j - 1] != b[j - 2]) return false;
        switch (b[j - 1]) {
            case 'b': case 'd': case 'f': case 'g': case 'm':
            case 'n': case 'p': case 'r': case 't':
                return true;
            default:
                return false;
        }
    }

    // consonant-vowel-consonant ending where the final consonant is not w/x/y
    bool cvc(size_t j) const {
        if (j < 3) return false;
        if (!cons(j - 1) || cons(j - 2) || !cons(j - 3)) return false;
        char c = b[j - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(const char* s) const {
        size_t n = std::strlen(s);
        if (n > b.size()) return false;
        return b.compare(b.size() - n, n, s) == 0;
    }

    void set_suffix(size_t cut, const char* s) {
        b.resize(b.size() - cut);
        b += s;
    }

    void step1ab() {
        if (ends("sses")) {
            b.resize(b.size() - 2);
        } else if (ends("ies")) {
            b.resize(b.size() - 2);
        } else if (!ends("ss") && ends("s")) {
            b.resize(b.size() - 1);
        }

        bool cleanup = false;
        if (ends("eed")) {
            if (measure(b.size() - 3) > 0) b.resize(b.size() - 1);
        } else if (ends("ed") && vowel_in_stem(b.size() - 2)) {
            b.resize(b.size() - 2);
            cleanup = true;
        } else if (ends("ing") && vowel_in_stem(b.size() - 3)) {
            b.resize(b.size() - 3);
            cleanup = true;
        }
        if (cleanup) {
            if (ends("at") || ends("bl") || ends("iz")) {
                b += 'e';
            } else if (double_cons_at_end(b.size())) {
                b.pop_back();
            } else if (measure(b.size()) == 1 && cvc(b.size())) {
                b += 'e';
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem(b.size() - 1)) b.back() = 'i';
    }

    struct rule {
        const char* suffix;
        const char* repl;
    };

    // first suffix match wins; the measure condition then gates the rewrite
    bool apply_rules(const rule* rules, size_t n, int min_measure) {
        for (size_t r = 0; r < n; ++r) {
            if (ends(rules[r].suffix)) {
                size_t cut = std::strlen(rules[r].suffix);
                if (measure(b.size() - cut) > min_measure) set_suffix(cut, rules[r].repl);
                return true;
            }
        }
        return false;
    }

    void step2() {
        static const rule rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
        };
        apply_rules(rules, std::size(rules), 0);
    }

    void step3() {
        static const rule rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        };
        apply_rules(rules, std::size(rules), 0);
    }

    void step4() {
        static const rule rules[] = {
            {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
            {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
            {"ent", ""},   {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
            {"ous", ""},   {"ive", ""},  {"ize", ""},
        };
        // "ion" only counts when the stem ends in s or t
        if (ends("sion") || ends("tion")) {
            if (measure(b.size() - 3) > 1) b.resize(b.size() - 3);
            return;
        }
        apply_rules(rules, std::size(rules), 1);
    }

    void step5() {
        if (!b.empty() && b.back() == 'e') {
            int m = measure(b.size() - 1);
            if (m > 1 || (m == 1 && !cvc(b.size() - 1))) b.pop_back();
        }
        if (b.size() >= 2 && b.back() == 'l' && b[b.size() - 2] == 'l' && measure(b.size()) > 1)
            b.pop_back();
    }
};

} // namespace

std::string porter_en_stem(std::string_view word) {
    for (char c : word)
        if (c < 'a' || c > 'z') return std::string(word);
    return porter(std::string(word)).run();
}

} // namespace prf
